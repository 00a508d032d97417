#include "kissbound/solverio.hpp"

#include "kissbound/files.hpp"

#include "json.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <fcntl.h>
#include <sstream>
#include <sys/stat.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

namespace kissbound {

using nlohmann::json;

std::string to_string(SolverError::Kind kind) {
  switch (kind) {
    case SolverError::Kind::Configuration: return "configuration";
    case SolverError::Kind::NonzeroExit: return "nonzero-exit";
    case SolverError::Kind::Timeout: return "timeout";
    case SolverError::Kind::MissingOutput: return "missing-output";
    case SolverError::Kind::Malformed: return "malformed-output";
    case SolverError::Kind::DimensionMismatch: return "dimension-mismatch";
    case SolverError::Kind::Io: return "io";
  }
  return "unknown";
}

namespace {

std::vector<std::string> split_whitespace(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
}

bool is_executable_file(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

// Enough decimal digits to reproduce a value at the current working precision.
int round_trip_digits() { return static_cast<int>(Real::default_precision()) + 2; }

}  // namespace

std::string params_to_string(const SolverParams& p) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "%d\tunsigned int maxIteration;\n"
                "%.3e\tdouble 0.0 < epsilonStar;\n"
                "%.3e\tdouble 0.0 < lambdaStar;\n"
                "%.3e\tdouble 1.0 < omegaStar;\n"
                "%.3e\tdouble lowerBound;\n"
                "%.3e\tdouble upperBound;\n"
                "%.3e\tdouble 0.0 <= betaStar < 1.0;\n"
                "%.3e\tdouble 0.0 <= betaBar < 1.0, betaStar <= betaBar;\n"
                "%.3e\tdouble 0.0 < gammaStar < 1.0;\n"
                "%.3e\tdouble 0.0 < epsilonDash;\n"
                "%u\tprecision;\n",
                p.max_iterations, p.epsilon_star, p.lambda_star, p.omega_star, p.lower_bound,
                p.upper_bound, p.beta_star, p.beta_bar, p.gamma_star, p.epsilon_dash, p.precision_bits);
  return buf;
}

void write_params(const SolverParams& params, const fs::path& path) { write_file(path, params_to_string(params)); }

fs::path SolverConfig::resolve_executable() const {
  const auto tokens = split_whitespace(command);
  if (tokens.empty()) throw SolverError(SolverError::Kind::Configuration, "solver command is empty");
  const fs::path exe = tokens.front();
  if (exe.has_parent_path()) {
    if (!is_executable_file(exe)) {
      throw SolverError(SolverError::Kind::Configuration, "solver executable not found or not executable: " + exe.string());
    }
    return fs::absolute(exe);
  }
  const char* path_env = std::getenv("PATH");
  std::istringstream dirs(path_env ? path_env : "");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    const fs::path candidate = fs::path(dir.empty() ? "." : dir) / exe;
    if (is_executable_file(candidate)) return fs::absolute(candidate);
  }
  throw SolverError(SolverError::Kind::Configuration, "solver executable '" + exe.string() + "' not found on PATH");
}

std::vector<std::string> SolverConfig::arguments(const fs::path& in, const fs::path& out, const fs::path& param) const {
  auto tokens = split_whitespace(command);
  for (auto& tok : tokens) {
    replace_all(tok, "{in}", in.string());
    replace_all(tok, "{out}", out.string());
    replace_all(tok, "{param}", param.string());
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Problem emission

std::vector<BlockInfo> emitted_blocks(const SdpProblem& problem) {
  std::vector<BlockInfo> blocks = problem.blocks;
  std::size_t inequalities = 0;
  for (const auto& row : problem.rows) inequalities += row.relation == Relation::LessEqual ? 1 : 0;
  if (inequalities > 0) blocks.push_back({"slack", inequalities, BlockKind::Diagonal});
  return blocks;
}

std::string emit_string(const SdpProblem& problem, int digits) {
  ScopedPrecision precision(problem.config.precision_bits);
  const auto blocks = emitted_blocks(problem);
  std::ostringstream out;
  out << "\"n=" << problem.config.n << " d=" << problem.config.d << " cos_theta=" << to_string(problem.config.cos_theta)
      << " mode=" << to_string(problem.config.mode) << " lambda_min=" << to_decimal(problem.lambda_shift, 17) << "\n";
  out << problem.rows.size() << " = mDIM\n";
  out << blocks.size() << " = nBLOCK\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const long dim = static_cast<long>(blocks[i].dim);
    out << (i ? " " : "") << (blocks[i].kind == BlockKind::Diagonal ? -dim : dim);
  }
  out << " = bLOCKsTRUCT\n{";
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    out << (i ? ", " : "") << to_decimal(problem.rows[i].rhs, digits);
  }
  out << "}\n";
  for (const auto& e : problem.objective) {
    const Real negated = -e.value;
    out << "0 " << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << to_decimal(negated, digits) << '\n';
  }
  const std::size_t slack_block = blocks.size();
  std::size_t slack_index = 0;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    for (const auto& e : problem.rows[i].entries) {
      out << i + 1 << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << to_decimal(e.value, digits)
          << '\n';
    }
    if (problem.rows[i].relation == Relation::LessEqual) {
      ++slack_index;
      out << i + 1 << ' ' << slack_block << ' ' << slack_index << ' ' << slack_index << " 1\n";
    }
  }
  return out.str();
}

void emit(const SdpProblem& problem, const fs::path& path, int digits) {
  try {
    write_file(path, emit_string(problem, digits));
  } catch (const std::exception& e) {
    throw SolverError(SolverError::Kind::Io, e.what());
  }
}

SdpaFile parse_sdpa_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_data_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '*' || line[0] == '"') continue;
      return line;
    }
    throw SolverError(SolverError::Kind::Malformed, "truncated SDPA problem");
  };
  auto numbers_of = [](std::string s) {
    for (char& c : s) {
      if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
    }
    return s;
  };
  SdpaFile f;
  {
    std::istringstream ls(numbers_of(next_data_line()));
    ls >> f.num_constraints;
  }
  std::size_t num_blocks = 0;
  {
    std::istringstream ls(numbers_of(next_data_line()));
    ls >> num_blocks;
  }
  {
    std::istringstream ls(numbers_of(next_data_line()));
    for (std::size_t i = 0; i < num_blocks; ++i) {
      long v = 0;
      if (!(ls >> v)) throw SolverError(SolverError::Kind::Malformed, "short block structure line");
      f.block_struct.push_back(v);
    }
  }
  {
    std::string joined;
    while (true) {
      joined += numbers_of(next_data_line()) + ' ';
      if (line.find('}') != std::string::npos || line.find('{') == std::string::npos) break;
    }
    std::istringstream ls(joined);
    for (std::string tok; f.rhs.size() < f.num_constraints && ls >> tok;) f.rhs.push_back(parse_real(tok));
    if (f.rhs.size() != f.num_constraints) throw SolverError(SolverError::Kind::Malformed, "short right-hand side");
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*' || line[0] == '"') continue;
    std::istringstream ls(line);
    SdpaEntry e;
    std::string value;
    if (!(ls >> e.constraint >> e.block >> e.row >> e.col >> value)) {
      throw SolverError(SolverError::Kind::Malformed, "bad entry line: " + line);
    }
    e.value = parse_real(value);
    f.entries.push_back(std::move(e));
  }
  return f;
}

SdpaFile parse_sdpa(const fs::path& path) { return parse_sdpa_string(read_file(path)); }

// ---------------------------------------------------------------------------
// Sidecar metadata

namespace {

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({m[0], m[1], m[2], to_string(c)});
  return terms;
}

Polynomial polynomial_from_json(const json& j) {
  Polynomial p;
  for (const auto& t : j) {
    p.add_term(Monomial{t.at(0).get<unsigned>(), t.at(1).get<unsigned>(), t.at(2).get<unsigned>()},
               parse_rational(t.at(3).get<std::string>()));
  }
  return p;
}

json matrix_to_json(const PolyMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) entries.push_back(polynomial_to_json(m.at(i, j)));
  }
  return {{"dim", m.dim()}, {"upper", entries}};
}

PolyMatrix matrix_from_json(const json& j) {
  PolyMatrix m(j.at("dim").get<std::size_t>());
  const auto& entries = j.at("upper");
  std::size_t idx = 0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = r; c < m.dim(); ++c) {
      m.at(r, c) = polynomial_from_json(entries.at(idx++));
      m.at(c, r) = m.at(r, c);
    }
  }
  return m;
}

std::string kind_name(BlockKind k) { return k == BlockKind::Diagonal ? "diagonal" : "psd"; }

}  // namespace

std::optional<std::size_t> ProblemMetadata::find_block(const std::string& name) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].name == name) return i;
  }
  return std::nullopt;
}

ProblemMetadata make_metadata(const SdpProblem& problem, const std::string& problem_text) {
  const ProblemConfig& cfg = problem.config;
  ProblemMetadata meta;
  meta.config = cfg;
  meta.blocks = emitted_blocks(problem);
  meta.objective_constant = problem.objective_constant;
  meta.lambda_shift = problem.lambda_shift;
  meta.num_rows = problem.rows.size();
  meta.constraint_i_rows = problem.constraint_i_rows;
  meta.constraint_ii_rows = problem.constraint_ii_rows;
  for (int k = 1; k <= cfg.d; ++k) meta.jacobi.push_back(jacobi(k, cfg.n));
  for (int k = 0; k <= cfg.d; ++k) meta.s_matrices.push_back(s_matrix(k, cfg.shape()));
  meta.interval = interval_polynomial(cfg.cos_theta);
  meta.invariants = delta_system(cfg.cos_theta).s;
  meta.multipliers = constraint_ii_multipliers(cfg.d);
  meta.problem_sha256 = sha256_hex(problem_text);
  return meta;
}

std::string metadata_to_string(const ProblemMetadata& meta) {
  ScopedPrecision precision(meta.config.precision_bits);
  const int digits = round_trip_digits();
  json j;
  j["config"] = {{"n", meta.config.n},
                 {"d", meta.config.d},
                 {"cos_theta", to_string(meta.config.cos_theta)},
                 {"lambda_min", to_decimal(meta.config.lambda_min, digits)},
                 {"mode", to_string(meta.config.mode)},
                 {"precision_bits", meta.config.precision_bits}};
  json blocks = json::array();
  for (std::size_t i = 0; i < meta.blocks.size(); ++i) {
    blocks.push_back({{"index", i + 1},
                      {"name", meta.blocks[i].name},
                      {"dim", meta.blocks[i].dim},
                      {"kind", kind_name(meta.blocks[i].kind)}});
  }
  j["blocks"] = blocks;
  j["objective_constant"] = to_decimal(meta.objective_constant, digits);
  j["lambda_shift"] = to_decimal(meta.lambda_shift, digits);
  j["rows"] = {{"total", meta.num_rows}, {"constraint_i", meta.constraint_i_rows}, {"constraint_ii", meta.constraint_ii_rows}};
  json jac = json::array();
  for (const auto& p : meta.jacobi) jac.push_back(polynomial_to_json(p));
  j["jacobi"] = jac;
  json sm = json::array();
  for (const auto& m : meta.s_matrices) sm.push_back(matrix_to_json(m));
  j["s_matrices"] = sm;
  j["interval"] = polynomial_to_json(meta.interval);
  json inv = json::array();
  for (const auto& p : meta.invariants) inv.push_back(polynomial_to_json(p));
  j["invariants"] = inv;
  json mult = json::array();
  for (const auto& m : meta.multipliers) mult.push_back({{"index", m.index}, {"degree", m.degree}});
  j["multipliers"] = mult;
  j["problem_sha256"] = meta.problem_sha256;
  return j.dump(1) + "\n";
}

ProblemMetadata metadata_from_string(const std::string& text) {
  ProblemMetadata meta;
  try {
    const json j = json::parse(text);
    const auto& c = j.at("config");
    meta.config.n = c.at("n").get<int>();
    meta.config.d = c.at("d").get<int>();
    meta.config.cos_theta = parse_rational(c.at("cos_theta").get<std::string>());
    meta.config.mode = parse_formulation(c.at("mode").get<std::string>());
    meta.config.precision_bits = c.at("precision_bits").get<unsigned>();
    ScopedPrecision precision(meta.config.precision_bits);
    meta.config.lambda_min = parse_real(c.at("lambda_min").get<std::string>());
    for (const auto& b : j.at("blocks")) {
      meta.blocks.push_back({b.at("name").get<std::string>(), b.at("dim").get<std::size_t>(),
                             b.at("kind").get<std::string>() == "diagonal" ? BlockKind::Diagonal : BlockKind::Psd});
    }
    meta.objective_constant = parse_real(j.at("objective_constant").get<std::string>());
    meta.lambda_shift = parse_real(j.at("lambda_shift").get<std::string>());
    meta.num_rows = j.at("rows").at("total").get<std::size_t>();
    meta.constraint_i_rows = j.at("rows").at("constraint_i").get<std::size_t>();
    meta.constraint_ii_rows = j.at("rows").at("constraint_ii").get<std::size_t>();
    for (const auto& p : j.at("jacobi")) meta.jacobi.push_back(polynomial_from_json(p));
    for (const auto& m : j.at("s_matrices")) meta.s_matrices.push_back(matrix_from_json(m));
    meta.interval = polynomial_from_json(j.at("interval"));
    const auto& inv = j.at("invariants");
    for (std::size_t i = 0; i < 4; ++i) meta.invariants[i] = polynomial_from_json(inv.at(i));
    for (const auto& m : j.at("multipliers")) meta.multipliers.push_back({m.at("index").get<int>(), m.at("degree").get<int>()});
    meta.problem_sha256 = j.at("problem_sha256").get<std::string>();
  } catch (const json::exception& e) {
    throw SolverError(SolverError::Kind::Malformed, std::string("bad metadata: ") + e.what());
  }
  meta.config.validate();
  return meta;
}

void write_metadata(const ProblemMetadata& meta, const fs::path& path) { write_file(path, metadata_to_string(meta)); }

ProblemMetadata read_metadata(const fs::path& path) { return metadata_from_string(read_file(path)); }

// ---------------------------------------------------------------------------
// Solver invocation

RunResult run(const SolverConfig& cfg, const fs::path& problem_file, const fs::path& output_file, const fs::path& log_file) {
  const fs::path exe = cfg.resolve_executable();
  if (!fs::exists(problem_file)) {
    throw SolverError(SolverError::Kind::Configuration, "problem file missing: " + problem_file.string());
  }
  fs::path param_file;
  if (cfg.param_file) {
    param_file = *cfg.param_file;
  } else {
    param_file = output_file;
    param_file.replace_extension(".param");
    write_params(cfg.params, param_file);
  }
  std::error_code ec;
  fs::remove(output_file, ec);
  if (log_file.has_parent_path()) fs::create_directories(log_file.parent_path());

  auto args = cfg.arguments(fs::absolute(problem_file), fs::absolute(output_file), fs::absolute(param_file));
  args.front() = exe.string();
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  const int log_fd = ::open(log_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (log_fd < 0) throw SolverError(SolverError::Kind::Io, "cannot open log " + log_file.string());

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(log_fd);
    throw SolverError(SolverError::Kind::Io, std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(log_fd, STDOUT_FILENO);
    ::dup2(log_fd, STDERR_FILENO);
    ::close(log_fd);
    if (!cfg.working_dir.empty() && ::chdir(cfg.working_dir.c_str()) != 0) _exit(126);
    ::execv(argv[0], argv.data());
    _exit(127);
  }
  ::close(log_fd);
  ::setpgid(pid, pid);

  int status = 0;
  while (true) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw SolverError(SolverError::Kind::Io, "waitpid failed");
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.timeout_seconds > 0 && elapsed > cfg.timeout_seconds) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw SolverError(SolverError::Kind::Timeout, "solver exceeded the " + std::to_string(cfg.timeout_seconds) +
                                                         " s limit; partial log kept at " + log_file.string());
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }

  RunResult result;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.output = output_file;
  result.log = log_file;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  if (result.exit_code != 0) {
    throw SolverError(SolverError::Kind::NonzeroExit,
                      "solver exited with status " + std::to_string(result.exit_code) + "; see " + log_file.string());
  }
  if (!fs::exists(output_file)) {
    throw SolverError(SolverError::Kind::MissingOutput, "solver produced no output file " + output_file.string());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Solution parsing

namespace {

struct BraceNode {
  std::vector<BraceNode> children;
  std::vector<std::string> numbers;
};

// Parses one {...} group starting at text[pos] == '{'.
BraceNode parse_group(const std::string& text, std::size_t& pos) {
  BraceNode node;
  ++pos;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) node.numbers.push_back(token);
    token.clear();
  };
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '{') {
      flush();
      node.children.push_back(parse_group(text, pos));
      continue;
    }
    ++pos;
    if (c == '}') {
      flush();
      return node;
    }
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  throw SolverError(SolverError::Kind::Malformed, "unbalanced braces in solver output");
}

std::string value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) throw SolverError(SolverError::Kind::Malformed, "solver output lacks '" + key + "'");
  const auto eq = text.find('=', pos);
  const auto end = text.find('\n', eq);
  std::istringstream in(text.substr(eq + 1, end - eq - 1));
  std::string value;
  in >> value;
  return value;
}

Real parse_number(const std::string& s) {
  try {
    return parse_real(s);
  } catch (const std::invalid_argument&) {
    throw SolverError(SolverError::Kind::Malformed, "bad number '" + s + "' in solver output");
  }
}

}  // namespace

RealMatrix Solution::block(const std::string& name) const {
  auto it = raw_blocks.find(name);
  if (it == raw_blocks.end()) throw std::out_of_range("solution has no block '" + name + "'");
  RealMatrix m = it->second;
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += lambda_shift;
  return m;
}

const std::vector<Real>& Solution::diagonal(const std::string& name) const {
  auto it = diagonals.find(name);
  if (it == diagonals.end()) throw std::out_of_range("solution has no diagonal block '" + name + "'");
  return it->second;
}

Real Solution::b11() const { return block("B")(0, 0); }
Real Solution::b12() const { return block("B")(0, 1); }
Real Solution::b22() const { return block("B")(1, 1); }
Real Solution::objective() const { return objective_constant - dual_objective; }

Solution parse_solution_string(const std::string& text, const ProblemMetadata& meta) {
  ScopedPrecision precision(meta.config.precision_bits);
  Solution sol;
  sol.precision_bits = meta.config.precision_bits;
  sol.layout = meta.blocks;
  sol.lambda_shift = meta.lambda_shift;
  sol.objective_constant = meta.objective_constant;
  sol.status = value_after(text, "phase.value");
  sol.primal_objective = parse_number(value_after(text, "objValPrimal"));
  sol.dual_objective = parse_number(value_after(text, "objValDual"));

  const auto ymat = text.find("yMat");
  if (ymat == std::string::npos) throw SolverError(SolverError::Kind::Malformed, "solver output lacks yMat");
  std::size_t pos = text.find('{', ymat);
  if (pos == std::string::npos) throw SolverError(SolverError::Kind::Malformed, "yMat has no data");
  const BraceNode root = parse_group(text, pos);

  for (std::size_t b = 0; b < meta.blocks.size(); ++b) {
    const BlockInfo& info = meta.blocks[b];
    if (b >= root.children.size()) {
      throw SolverError(SolverError::Kind::DimensionMismatch, "block " + info.name + " missing from solver output");
    }
    const BraceNode& node = root.children[b];
    if (info.kind == BlockKind::Diagonal) {
      if (!node.children.empty() || node.numbers.size() != info.dim) {
        throw SolverError(SolverError::Kind::DimensionMismatch, "diagonal block " + info.name + " has wrong size");
      }
      std::vector<Real> values;
      for (const auto& s : node.numbers) values.push_back(parse_number(s));
      sol.diagonals.emplace(info.name, std::move(values));
      continue;
    }
    if (node.children.size() != info.dim) {
      throw SolverError(SolverError::Kind::DimensionMismatch,
                        "block " + info.name + " has " + std::to_string(node.children.size()) + " rows, expected " +
                            std::to_string(info.dim));
    }
    RealMatrix m(info.dim);
    for (std::size_t i = 0; i < info.dim; ++i) {
      const auto& row = node.children[i].numbers;
      if (row.size() != info.dim) {
        throw SolverError(SolverError::Kind::DimensionMismatch, "block " + info.name + " row " + std::to_string(i + 1) +
                                                                    " has wrong length");
      }
      for (std::size_t j = 0; j < info.dim; ++j) m(i, j) = parse_number(row[j]);
    }
    sol.raw_blocks.emplace(info.name, m.symmetrized());
  }
  if (root.children.size() > meta.blocks.size()) {
    throw SolverError(SolverError::Kind::DimensionMismatch, "solver output has more blocks than the problem");
  }
  return sol;
}

Solution parse_solution(const fs::path& path, const ProblemMetadata& meta) {
  if (!fs::exists(path)) throw SolverError(SolverError::Kind::MissingOutput, "solution file missing: " + path.string());
  return parse_solution_string(read_file(path), meta);
}

std::string solution_to_string(const Solution& sol) {
  ScopedPrecision precision(sol.precision_bits);
  const int digits = round_trip_digits();
  std::ostringstream out;
  out << "phase.value  = " << sol.status << "\n";
  out << "objValPrimal = " << to_decimal(sol.primal_objective, digits) << "\n";
  out << "objValDual   = " << to_decimal(sol.dual_objective, digits) << "\n";
  out << "yMat = \n{\n";
  for (const auto& info : sol.layout) {
    if (info.kind == BlockKind::Diagonal) {
      out << "{";
      const auto& v = sol.diagonal(info.name);
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << to_decimal(v[i], digits);
      out << " }\n";
      continue;
    }
    const RealMatrix& m = sol.raw_blocks.at(info.name);
    out << "{ ";
    for (std::size_t i = 0; i < m.dim(); ++i) {
      out << (i ? ", {" : "{");
      for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? "," : "") << to_decimal(m(i, j), digits);
      out << " }";
    }
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

void write_solution(const Solution& sol, const fs::path& path) { write_file(path, solution_to_string(sol)); }

}  // namespace kissbound
