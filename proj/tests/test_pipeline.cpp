#include "doctest.h"
#include "support.hpp"

#include "kissbound/pipeline.hpp"
#include "kissbound/published.hpp"

#include "json.hpp"

using namespace kissbound;
using namespace testsupport;

namespace {

JobSpec fixture_job(const fs::path& root, int d, Formulation mode) {
  JobSpec job;
  job.n = 3;
  job.d = d;
  job.cos_theta = "1/2";
  job.lambda_min = "1e-4";
  job.mode = mode;
  job.out_dir = root / "jobs";
  fs::create_directories(root);
  job.solver.command = replay_solver(root, data_dir() / fixture_name(d, mode));
  return job;
}

nlohmann::json without_timestamp(const fs::path& report) {
  auto j = nlohmann::json::parse(read_file(report));
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("cos_theta parsing") {
  CHECK(parse_cos_theta("kissing") == frac(1, 2));
  CHECK(parse_cos_theta("1/2") == frac(1, 2));
  CHECK(parse_cos_theta("0.5") == frac(1, 2));
  CHECK(parse_cos_theta("-1/4") == frac(-1, 4));
  CHECK_THROWS_AS(parse_cos_theta("0.5x"), std::invalid_argument);
}

TEST_CASE("job ids are deterministic and sensitive to the configuration") {
  JobSpec a;
  JobSpec b;
  CHECK(a.job_id() == b.job_id());
  CHECK(a.job_id().size() == 4 + 16);
  b.cos_theta = "0.5";
  CHECK(a.job_id() == b.job_id());
  b.d = 4;
  CHECK(a.job_id() != b.job_id());
  b = a;
  b.mode = Formulation::Monomial;
  CHECK(a.job_id() != b.job_id());
  b = a;
  b.solver.timeout_seconds = 5;
  b.out_dir = "elsewhere";
  CHECK(a.job_id() == b.job_id());
}

TEST_CASE("gen writes the problem, metadata and job file") {
  const fs::path root = scratch_dir("gen");
  JobSpec job = fixture_job(root, 3, Formulation::Reduced);
  const GenSummary summary = cmd_gen(job);
  const JobFiles files = job_files(summary.dir);
  CHECK(summary.constraint_i_rows == 7);
  CHECK(summary.constraint_ii_rows == brute_orbit_count(6));
  CHECK(summary.rows == summary.constraint_i_rows + summary.constraint_ii_rows);
  for (const auto& p : {files.problem, files.metadata, files.spec}) CHECK(fs::exists(p));
  CHECK(read_metadata(files.metadata).problem_sha256 == sha256_file(files.problem));

  const std::string first = read_file(files.problem);
  const std::string first_meta = read_file(files.metadata);
  cmd_gen(job);
  CHECK(read_file(files.problem) == first);
  CHECK(read_file(files.metadata) == first_meta);
  fs::remove_all(root);
}

TEST_CASE("gen rejects a malformed cos_theta before writing") {
  const fs::path root = scratch_dir("badcos");
  JobSpec job = fixture_job(root, 3, Formulation::Reduced);
  job.cos_theta = "0.5x";
  try {
    cmd_gen(job);
    FAIL("malformed cos_theta was accepted");
  } catch (const StageError& e) {
    CHECK(e.stage() == "gen");
    CHECK(std::string(e.what()).find("0.5x") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(job.out_dir));
  fs::remove_all(root);
}

TEST_CASE("certify without a solver output names the missing artifact") {
  const fs::path root = scratch_dir("nosol");
  JobSpec job = fixture_job(root, 3, Formulation::Reduced);
  cmd_gen(job);
  try {
    cmd_certify(job);
    FAIL("certify ran without a solution");
  } catch (const StageError& e) {
    CHECK(e.stage() == "certify");
    CHECK(std::string(e.what()).find("solver.out") != std::string::npos);
  }
  fs::remove_all(root);
}

TEST_CASE("end to end with a replayed solver") {
  const fs::path root = scratch_dir("all");
  JobSpec job = fixture_job(root, 3, Formulation::Reduced);
  const CertifiedBound cert = cmd_all(job);
  CHECK(cert.certified());
  REQUIRE(cert.bound);
  CHECK(*cert.bound >= 12);
  const JobFiles files = job_files(job.job_dir());
  REQUIRE(fs::exists(files.report));
  CHECK(audit_summary(cert).find("certified") != std::string::npos);

  SUBCASE("certify is idempotent apart from the timestamp") {
    const auto before = without_timestamp(files.report);
    const CertifiedBound again = cmd_certify(job);
    CHECK(again.bound == cert.bound);
    CHECK(without_timestamp(files.report) == before);
  }
  SUBCASE("a problem file that does not match its metadata is refused") {
    write_file(files.problem, read_file(files.problem) + "\n");
    try {
      cmd_certify(job);
      FAIL("tampered problem accepted");
    } catch (const StageError& e) {
      CHECK(std::string(e.what()).find("hash mismatch") != std::string::npos);
    }
  }
  fs::remove_all(root);
}

TEST_CASE("solve reports a timeout as a solve-stage error") {
  const fs::path root = scratch_dir("slow");
  JobSpec job = fixture_job(root, 3, Formulation::Reduced);
  const fs::path script = root / "slow.sh";
  write_file(script, "#!/bin/sh\nsleep 30\n");
  fs::permissions(script, fs::perms::owner_all);
  job.solver.command = script.string() + " -ds {in} -o {out} -p {param}";
  job.solver.timeout_seconds = 0.5;
  cmd_gen(job);
  try {
    cmd_solve(job);
    FAIL("expected a timeout");
  } catch (const StageError& e) {
    CHECK(e.stage() == "solve");
    CHECK(std::string(e.what()).find("timeout") != std::string::npos);
  }
  fs::remove_all(root);
}

TEST_CASE("report table") {
  const fs::path root = scratch_dir("report");
  fs::create_directories(root / "jobs");
  SUBCASE("empty directory gives only the header and rule") {
    const std::string table = render_table(collect_reports(root / "jobs"), false);
    CHECK(std::count(table.begin(), table.end(), '\n') == 2);
    CHECK(table.find("certified bound") != std::string::npos);
    CHECK(collect_reports(root / "absent").empty());
  }
  SUBCASE("rows are sorted and the bound does not grow with d") {
    const JobSpec d4 = fixture_job(root / "a", 4, Formulation::Reduced);
    JobSpec d3 = fixture_job(root / "b", 3, Formulation::Reduced);
    d3.out_dir = d4.out_dir;
    cmd_all(d4);
    cmd_all(d3);
    const auto rows = collect_reports(d4.out_dir);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].d == 3);
    CHECK(rows[1].d == 4);
    REQUIRE(rows[0].certified_bound);
    REQUIRE(rows[1].certified_bound);
    CHECK(parse_rational(*rows[1].certified_bound) <= parse_rational(*rows[0].certified_bound));
    CHECK(rows[0].mode == "reduced");
    const std::string table = render_table(rows, true);
    CHECK(table.find("certified") != std::string::npos);
  }
  fs::remove_all(root);
}

TEST_CASE("published table lookups") {
  CHECK(published_upper(9, 16) == std::optional<std::string>("363.675154"));
  CHECK(published_upper(3, 15) == std::optional<std::string>("12.374682"));
  CHECK_FALSE(published_upper(3, 5));
  CHECK_FALSE(published_upper(8, 16));
}
