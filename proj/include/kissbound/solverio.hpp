#pragma once

#include "kissbound/matrix.hpp"
#include "kissbound/sdpbuild.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kissbound {

namespace fs = std::filesystem;

class SolverError : public std::runtime_error {
public:
  enum class Kind { Configuration, NonzeroExit, Timeout, MissingOutput, Malformed, DimensionMismatch, Io };

  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

std::string to_string(SolverError::Kind kind);

/// The eleven values of an SDPA parameter file, in file order.
struct SolverParams {
  int max_iterations = 300;
  double epsilon_star = 1e-30;
  double lambda_star = 1e4;
  double omega_star = 2.0;
  double lower_bound = -1e25;
  double upper_bound = 1e25;
  double beta_star = 0.1;
  double beta_bar = 0.3;
  double gamma_star = 0.7;
  double epsilon_dash = 1e-30;
  unsigned precision_bits = 200;
};

std::string params_to_string(const SolverParams& params);

struct SolverConfig {
  /// Whitespace-separated argument template; {in}, {out} and {param} are
  /// replaced by the problem, result and parameter file paths.
  std::string command = "sdpa_gmp -ds {in} -o {out} -p {param}";
  SolverParams params;
  /// Used verbatim instead of `params` when set.
  std::optional<fs::path> param_file;
  fs::path working_dir = ".";
  /// Zero disables the limit.
  double timeout_seconds = 0;

  /// Absolute path of the executable named by the template's first token.
  /// Throws SolverError(Configuration) when it cannot be found or run.
  fs::path resolve_executable() const;
  std::vector<std::string> arguments(const fs::path& in, const fs::path& out, const fs::path& param) const;
};

/// Blocks as emitted: the problem's blocks followed, when the problem has
/// inequality rows, by a diagonal "slack" block.
std::vector<BlockInfo> emitted_blocks(const SdpProblem& problem);

/// Sparse SDPA text. The solver maximizes <-objective, Y>, so the emitted
/// objective matrix carries the negated coefficients.
std::string emit_string(const SdpProblem& problem, int digits = kDefaultEmitDigits);
void emit(const SdpProblem& problem, const fs::path& path, int digits = kDefaultEmitDigits);

struct SdpaEntry {
  std::size_t constraint = 0;  // 0 is the objective
  std::size_t block = 0;       // 1-based, as in the file
  std::size_t row = 0;
  std::size_t col = 0;
  Real value;
};

struct SdpaFile {
  std::size_t num_constraints = 0;
  std::vector<long> block_struct;
  std::vector<Real> rhs;
  std::vector<SdpaEntry> entries;
};

SdpaFile parse_sdpa_string(const std::string& text);
SdpaFile parse_sdpa(const fs::path& path);

/// Exact problem data the certifier needs, independent of any floating file.
struct ProblemMetadata {
  ProblemConfig config;
  std::vector<BlockInfo> blocks;
  Real objective_constant;
  Real lambda_shift;
  std::size_t num_rows = 0;
  std::size_t constraint_i_rows = 0;
  std::size_t constraint_ii_rows = 0;
  std::vector<Polynomial> jacobi;        // P_1 .. P_d
  std::vector<PolyMatrix> s_matrices;    // S_0 .. S_d
  Polynomial interval;                   // g(u)
  std::array<Polynomial, 4> invariants;  // s_1 .. s_4
  std::vector<Multiplier> multipliers;
  std::string problem_sha256;

  std::optional<std::size_t> find_block(const std::string& name) const;
};

ProblemMetadata make_metadata(const SdpProblem& problem, const std::string& problem_text);
std::string metadata_to_string(const ProblemMetadata& meta);
ProblemMetadata metadata_from_string(const std::string& text);
void write_metadata(const ProblemMetadata& meta, const fs::path& path);
ProblemMetadata read_metadata(const fs::path& path);

void write_params(const SolverParams& params, const fs::path& path);

struct RunResult {
  int exit_code = 0;
  double seconds = 0;
  fs::path output;
  fs::path log;
};

/// Runs the solver on `problem_file`, capturing stdout and stderr in `log_file`.
/// Throws SolverError with kind NonzeroExit, Timeout or MissingOutput.
RunResult run(const SolverConfig& cfg, const fs::path& problem_file, const fs::path& output_file,
              const fs::path& log_file);

/// Parsed solver result. Values are those of the solver's variables, i.e. of
/// X' where X = X' + lambda_shift I on Psd blocks.
struct Solution {
  std::vector<BlockInfo> layout;
  std::map<std::string, RealMatrix> raw_blocks;
  std::map<std::string, std::vector<Real>> diagonals;
  Real lambda_shift;
  Real primal_objective;  // as reported, solver sign convention
  Real dual_objective;
  Real objective_constant;
  std::string status;
  unsigned precision_bits = kDefaultPrecisionBits;

  /// Block value with the shift added back.
  RealMatrix block(const std::string& name) const;
  const std::vector<Real>& diagonal(const std::string& name) const;
  std::vector<Real> a() const { return diagonal("a"); }
  Real b11() const;
  Real b12() const;
  Real b22() const;
  /// Objective of the minimization problem, read off the solver's dual value.
  Real objective() const;
};

Solution parse_solution_string(const std::string& text, const ProblemMetadata& meta);
Solution parse_solution(const fs::path& path, const ProblemMetadata& meta);

/// SDPA result layout; parse_solution_string(solution_to_string(s)) reproduces s.
std::string solution_to_string(const Solution& sol);
void write_solution(const Solution& sol, const fs::path& path);

}  // namespace kissbound
