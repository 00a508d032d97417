// Command line driver: gen | solve | certify | all | report.

#include "kissbound/pipeline.hpp"
#include "kissbound/published.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>

using namespace kissbound;
using nlohmann::json;

namespace {

struct Flags {
  int n = 3;
  int d = 3;
  std::string cos_theta = "1/2";
  std::string lambda_min = "1e-8";
  std::string mode = "reduced";
  std::string solver_cmd = SolverConfig{}.command;
  unsigned precision_bits = kDefaultPrecisionBits;
  double timeout = 0;
  std::string out_dir = "jobs";
  bool json_output = false;
  bool published = false;
};

JobSpec make_job(const Flags& f) {
  JobSpec job;
  job.n = f.n;
  job.d = f.d;
  job.cos_theta = f.cos_theta;
  job.lambda_min = f.lambda_min;
  job.mode = parse_formulation(f.mode);
  job.precision_bits = f.precision_bits;
  job.solver.command = f.solver_cmd;
  job.solver.timeout_seconds = f.timeout;
  job.out_dir = f.out_dir;
  return job;
}

int print_certificate(const CertifiedBound& cert, const JobSpec& job, bool as_json) {
  if (as_json) {
    std::cout << report_to_json(cert);
  } else {
    std::cout << "job " << job.job_dir().string() << "\n" << audit_summary(cert);
  }
  return cert.certified() ? 0 : 3;
}

int run_gen(const JobSpec& job, bool as_json) {
  const GenSummary s = cmd_gen(job);
  if (as_json) {
    json blocks = json::array();
    for (const auto& b : s.blocks) blocks.push_back({{"name", b.name}, {"dim", b.dim}});
    json out{{"job_dir", s.dir.string()},
             {"rows", s.rows},
             {"constraint_i_rows", s.constraint_i_rows},
             {"constraint_ii_rows", s.constraint_ii_rows},
             {"blocks", blocks}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "job " << s.dir.string() << "\n";
  std::cout << "rows: " << s.rows << " (" << s.constraint_i_rows << " univariate, " << s.constraint_ii_rows
            << " trivariate)\n";
  std::cout << "blocks: " << s.blocks.size() << "\n";
  for (const auto& b : s.blocks) std::cout << "  " << b.name << "  " << b.dim << "\n";
  return 0;
}

int run_solve(const JobSpec& job, bool as_json) {
  const RunResult r = cmd_solve(job);
  if (as_json) {
    std::cout << json{{"output", r.output.string()}, {"log", r.log.string()}, {"seconds", r.seconds}}.dump(2) << "\n";
  } else {
    std::cout << "solver finished in " << r.seconds << " s\n  output " << r.output.string() << "\n  log    "
              << r.log.string() << "\n";
  }
  return 0;
}

int run_report(const Flags& f) {
  const auto rows = collect_reports(f.out_dir);
  if (f.json_output) {
    json out = json::array();
    for (const auto& r : rows) {
      json row{{"n", r.n}, {"d", r.d}, {"cos_theta", r.cos_theta}, {"mode", r.mode},
               {"solver_objective", r.solver_objective}, {"status", r.status}};
      row["certified_bound"] = r.certified_bound ? json(*r.certified_bound) : json(nullptr);
      if (f.published) row["published"] = r.published ? json(*r.published) : json(nullptr);
      out.push_back(row);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << render_table(rows, f.published);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified semidefinite upper bounds for spherical codes and kissing numbers"};
  app.set_config("--config", "", "TOML/INI file with any of the flags below; command line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--n", f.n, "Dimension of the sphere's ambient space (>= 3)");
  app.add_option("--d", f.d, "Degree parameter of the hierarchy (>= 1)");
  app.add_option("--cos-theta", f.cos_theta, "Exact rational cosine of the minimal angle, or 'kissing'");
  app.add_option("--lambda-min", f.lambda_min, "Eigenvalue floor imposed on the solver");
  app.add_option("--mode", f.mode, "Trivariate constraint formulation")->check(CLI::IsMember({"reduced", "monomial"}));
  app.add_option("--solver-cmd", f.solver_cmd, "Solver command template with {in}, {out}, {param}");
  app.add_option("--precision-bits", f.precision_bits, "Working precision of the certifier");
  app.add_option("--timeout", f.timeout, "Solver time limit in seconds (0: none)");
  app.add_option("--out-dir", f.out_dir, "Directory holding the job directories");
  app.add_flag("--json", f.json_output, "Machine-readable output");

  auto* gen = app.add_subcommand("gen", "Write the SDP problem and its exact metadata");
  auto* solve = app.add_subcommand("solve", "Run the external solver on a generated problem");
  auto* cert = app.add_subcommand("certify", "Turn the solver output into a rational upper bound");
  auto* all = app.add_subcommand("all", "gen, solve and certify in sequence");
  auto* report = app.add_subcommand("report", "Summarize every job report under --out-dir");
  report->add_flag("--published", f.published, "Add published bounds and the difference");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*report) return run_report(f);
    const JobSpec job = make_job(f);
    if (*gen) return run_gen(job, f.json_output);
    if (*solve) return run_solve(job, f.json_output);
    if (*cert) return print_certificate(cmd_certify(job), job, f.json_output);
    if (*all) return print_certificate(cmd_all(job), job, f.json_output);
  } catch (const StageError& e) {
    std::cerr << "error in " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
