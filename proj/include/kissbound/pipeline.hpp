#pragma once

#include "kissbound/certify.hpp"
#include "kissbound/solverio.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kissbound {

/// "kissing" is an alias for 1/2; anything else must be an exact rational.
Rational parse_cos_theta(const std::string& text);

struct JobSpec {
  int n = 3;
  int d = 3;
  std::string cos_theta = "1/2";
  std::string lambda_min = "1e-8";
  Formulation mode = Formulation::Reduced;
  unsigned precision_bits = kDefaultPrecisionBits;
  SolverConfig solver;
  fs::path out_dir = "jobs";

  /// Validated problem configuration; throws std::invalid_argument.
  ProblemConfig problem_config() const;
  /// Canonical text of everything that determines the job's artifacts.
  std::string canonical() const;
  /// "job-" followed by 16 hex digits of the canonical text's SHA-256.
  std::string job_id() const;
  fs::path job_dir() const { return out_dir / job_id(); }
};

struct JobFiles {
  fs::path spec, problem, metadata, params, solver_output, solver_log, report;
};

JobFiles job_files(const fs::path& dir);

class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

struct GenSummary {
  fs::path dir;
  std::vector<BlockInfo> blocks;
  std::size_t rows = 0;
  std::size_t constraint_i_rows = 0;
  std::size_t constraint_ii_rows = 0;
};

GenSummary cmd_gen(const JobSpec& job);
RunResult cmd_solve(const JobSpec& job);
CertifiedBound cmd_certify(const JobSpec& job);
CertifiedBound cmd_all(const JobSpec& job);

std::string audit_summary(const CertifiedBound& cert);

struct SummaryRow {
  int n = 0;
  int d = 0;
  std::string cos_theta;
  std::string mode;
  std::string solver_objective;
  std::optional<std::string> certified_bound;
  std::optional<std::string> published;
  std::string status;
};

/// One row per job directory under `root` holding a report, sorted by (n, d).
std::vector<SummaryRow> collect_reports(const fs::path& root);
std::string render_table(const std::vector<SummaryRow>& rows, bool with_published);

}  // namespace kissbound
