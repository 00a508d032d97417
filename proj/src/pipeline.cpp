#include "kissbound/pipeline.hpp"

#include "kissbound/files.hpp"
#include "kissbound/published.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace kissbound {

using nlohmann::json;

Rational parse_cos_theta(const std::string& text) {
  if (text == "kissing") return Rational(1, 2);
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cos_theta must be an exact rational such as 1/2 (or 'kissing'), got '" + text + "'");
  }
}

ProblemConfig JobSpec::problem_config() const {
  ProblemConfig cfg;
  cfg.n = n;
  cfg.d = d;
  cfg.cos_theta = parse_cos_theta(cos_theta);
  cfg.mode = mode;
  cfg.precision_bits = precision_bits;
  ScopedPrecision precision(precision_bits);
  Rational lambda;
  try {
    lambda = parse_rational(lambda_min);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("lambda_min must be a decimal number, got '" + lambda_min + "'");
  }
  cfg.lambda_min = to_real(lambda);
  cfg.validate();
  return cfg;
}

std::string JobSpec::canonical() const {
  const ProblemConfig cfg = problem_config();
  std::ostringstream out;
  out << "n=" << cfg.n << ";d=" << cfg.d << ";cos_theta=" << to_string(cfg.cos_theta)
      << ";lambda_min=" << to_string(parse_rational(lambda_min)) << ";mode=" << to_string(cfg.mode)
      << ";precision_bits=" << cfg.precision_bits << ";solver=" << solver.command << ";params="
      << params_to_string(solver.params);
  return out.str();
}

std::string JobSpec::job_id() const { return "job-" + sha256_hex(canonical()).substr(0, 16); }

JobFiles job_files(const fs::path& dir) {
  return {dir / "job.json",   dir / "problem.dat-s", dir / "problem.meta.json", dir / "solver.param",
          dir / "solver.out", dir / "solver.log",    dir / "report.json"};
}

namespace {

json spec_json(const JobSpec& job, const ProblemConfig& cfg) {
  return {{"n", cfg.n},
          {"d", cfg.d},
          {"cos_theta", to_string(cfg.cos_theta)},
          {"lambda_min", job.lambda_min},
          {"mode", to_string(cfg.mode)},
          {"precision_bits", cfg.precision_bits},
          {"solver_cmd", job.solver.command},
          {"job_id", job.job_id()}};
}

void require(const fs::path& p, const std::string& stage, const std::string& hint) {
  if (!fs::exists(p)) throw StageError(stage, "missing artifact " + p.string() + "; " + hint);
}

}  // namespace

GenSummary cmd_gen(const JobSpec& job) {
  ProblemConfig cfg;
  try {
    cfg = job.problem_config();
  } catch (const std::invalid_argument& e) {
    throw StageError("gen", e.what());
  }
  const SdpProblem problem = assemble(cfg);
  const std::string text = emit_string(problem);
  const ProblemMetadata meta = make_metadata(problem, text);

  GenSummary summary;
  summary.dir = job.job_dir();
  const JobFiles files = job_files(summary.dir);
  try {
    write_file(files.problem, text);
    write_metadata(meta, files.metadata);
    write_file(files.spec, spec_json(job, cfg).dump(2) + "\n");
  } catch (const std::exception& e) {
    throw StageError("gen", e.what());
  }
  summary.blocks = meta.blocks;
  summary.rows = meta.num_rows;
  summary.constraint_i_rows = meta.constraint_i_rows;
  summary.constraint_ii_rows = meta.constraint_ii_rows;
  return summary;
}

RunResult cmd_solve(const JobSpec& job) {
  const fs::path dir = job.job_dir();
  const JobFiles files = job_files(dir);
  try {
    job.solver.resolve_executable();
  } catch (const SolverError& e) {
    throw StageError("solve", e.what());
  }
  require(files.problem, "solve", "run 'gen' first");
  SolverConfig solver = job.solver;
  if (solver.working_dir.empty() || solver.working_dir == ".") solver.working_dir = dir;
  try {
    return run(solver, files.problem, files.solver_output, files.solver_log);
  } catch (const SolverError& e) {
    throw StageError("solve", to_string(e.kind()) + ": " + e.what());
  }
}

CertifiedBound cmd_certify(const JobSpec& job) {
  const fs::path dir = job.job_dir();
  const JobFiles files = job_files(dir);
  require(files.metadata, "certify", "run 'gen' first");
  require(files.problem, "certify", "run 'gen' first");
  require(files.solver_output, "certify", "run 'solve' first");
  try {
    const ProblemMetadata meta = read_metadata(files.metadata);
    if (sha256_file(files.problem) != meta.problem_sha256) {
      throw StageError("certify", "metadata does not belong to " + files.problem.string() + " (hash mismatch)");
    }
    const Solution sol = parse_solution(files.solver_output, meta);
    CertifyOptions options;
    options.precision_bits = job.precision_bits;
    options.solution_sha256 = sha256_file(files.solver_output);
    CertifiedBound cert = certify(sol, meta, options);
    write_file(files.report, report_to_json(cert));
    return cert;
  } catch (const SolverError& e) {
    throw StageError("certify", to_string(e.kind()) + ": " + e.what());
  }
}

CertifiedBound cmd_all(const JobSpec& job) {
  cmd_gen(job);
  cmd_solve(job);
  return cmd_certify(job);
}

std::string audit_summary(const CertifiedBound& cert) {
  std::ostringstream out;
  out << "n = " << cert.n << ", d = " << cert.d << ", cos_theta = " << to_string(cert.cos_theta) << "\n";
  out << "status: " << to_string(cert.status) << "\n";
  if (!cert.message.empty()) out << "  " << cert.message << "\n";
  out << "solver objective: " << to_decimal(cert.solver_objective, 20) << "\n";
  if (cert.bound) out << "certified bound:  " << cert.bound_decimal << "\n";
  for (const auto& f : cert.audit.floors) {
    out << "  floor " << f.name << " (dim " << f.dim << "): " << (f.ok ? to_decimal(f.lambda, 6) : "failed") << "\n";
  }
  for (const auto& fam : cert.audit.families) {
    ScopedPrecision precision(kDefaultPrecisionBits);
    const Real norm = boost::multiprecision::sqrt(to_real(fam.norm_squared));
    out << "  residual (" << fam.family << ") into " << fam.absorbing_block << ": ||A|| = " << to_decimal(norm, 6)
        << " vs lambda = " << to_decimal(fam.lambda, 6) << (fam.ok ? " ok" : " FAILED") << "\n";
  }
  if (cert.audit.clipped_scalars > 0) out << "  clipped " << cert.audit.clipped_scalars << " negative a_k to 0\n";
  return out.str();
}

std::vector<SummaryRow> collect_reports(const fs::path& root) {
  std::vector<SummaryRow> rows;
  if (!fs::exists(root)) return rows;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const JobFiles files = job_files(entry.path());
    if (!fs::exists(files.report)) continue;
    const json report = json::parse(read_file(files.report));
    SummaryRow row;
    row.n = report.at("n").get<int>();
    row.d = report.at("d").get<int>();
    row.cos_theta = report.at("cos_theta").get<std::string>();
    row.solver_objective = report.at("solver_objective").get<std::string>();
    row.status = report.at("status").get<std::string>();
    if (row.status == "certified") row.certified_bound = report.at("certified_bound_decimal").get<std::string>();
    if (fs::exists(files.spec)) row.mode = json::parse(read_file(files.spec)).value("mode", "");
    if (row.cos_theta == "1/2") row.published = published_upper(row.n, row.d);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.n, a.d, a.cos_theta, a.mode) < std::tie(b.n, b.d, b.cos_theta, b.mode);
  });
  return rows;
}

std::string render_table(const std::vector<SummaryRow>& rows, bool with_published) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"n", "d", "cos_theta", "mode", "solver objective", "certified bound", "status"};
  if (with_published) {
    header.push_back("published");
    header.push_back("bound - published");
  }
  cells.push_back(header);
  for (const auto& r : rows) {
    auto fixed = [](const std::string& decimal) { return to_fixed(parse_rational(decimal), 9, true); };
    std::vector<std::string> line{std::to_string(r.n), std::to_string(r.d), r.cos_theta, r.mode,
                                  to_fixed(parse_rational(r.solver_objective), 9),
                                  r.certified_bound ? fixed(*r.certified_bound) : "-", r.status};
    if (with_published) {
      line.push_back(r.published.value_or("-"));
      if (r.published && r.certified_bound) {
        const Rational delta = parse_rational(*r.certified_bound) - parse_rational(*r.published);
        line.push_back(to_fixed(delta, 6, true));
      } else {
        line.push_back("-");
      }
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      out << (i ? "  " : "") << cells[r][i] << std::string(width[i] - cells[r][i].size(), ' ');
    }
    out << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << "\n";
    }
  }
  return out.str();
}

}  // namespace kissbound
