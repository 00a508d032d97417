#pragma once

// Independent oracles and fixtures shared by the unit tests and the acceptance runner.

#include "kissbound/certify.hpp"
#include "kissbound/files.hpp"
#include "kissbound/orthopoly.hpp"
#include "kissbound/sdpbuild.hpp"
#include "kissbound/solverio.hpp"
#include "kissbound/symmetry.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace kissbound;

inline fs::path data_dir() { return fs::path(KISSBOUND_TEST_DATA); }

/// Fresh empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  const fs::path dir = fs::temp_directory_path() / ("kissbound-" + tag + "-" + std::to_string(rng() % 1000000007));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// num / den in lowest terms (gmpxx leaves the two-argument constructor uncanonicalized).
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational random_rational(std::mt19937_64& rng, long range = 1000) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, range);
  return frac(num(rng), den(rng));
}

/// Uniform rational in [-1, 1] with denominator `den`.
inline Rational random_unit(std::mt19937_64& rng, long den = 1000) {
  std::uniform_int_distribution<long> num(-den, den);
  return frac(num(rng), den);
}

inline Polynomial random_polynomial(std::mt19937_64& rng, unsigned max_degree, std::size_t terms) {
  const auto basis = monomials_up_to(max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  Polynomial p;
  for (std::size_t i = 0; i < terms; ++i) p.add_term(basis[pick(rng)], random_rational(rng, 20));
  return p;
}

// ---------------------------------------------------------------- univariate

/// Univariate polynomial as a dense coefficient vector (index = power of u).
using Dense = std::vector<Rational>;

inline Dense dense_of(const Polynomial& p) {
  Dense out(static_cast<std::size_t>(std::max(p.degree(), 0) + 1), Rational(0));
  for (const auto& [m, c] : p.terms()) out.at(m[0]) = c;
  return out;
}

inline Rational dense_eval(const Dense& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Moments of the weight (1 - u^2)^alpha on [-1, 1], normalized to mu_0 = 1.
/// mu_{m+2} / mu_m = (m + 1) / (m + 3 + 2 alpha); odd moments vanish.
inline std::vector<Rational> jacobi_moments(const Rational& alpha, int count) {
  std::vector<Rational> mu(static_cast<std::size_t>(count), Rational(0));
  mu[0] = 1;
  for (int m = 0; m + 2 < count; m += 2) {
    mu[static_cast<std::size_t>(m + 2)] = mu[static_cast<std::size_t>(m)] * Rational(m + 1) / (Rational(m + 3) + 2 * alpha);
  }
  return mu;
}

inline Rational moment_inner(const Dense& p, const Dense& q, const std::vector<Rational>& mu) {
  Rational acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) acc += p[i] * q[j] * mu.at(i + j);
  }
  return acc;
}

/// Gram-Schmidt on 1, u, ..., u^k with weight (1 - u^2)^((n-3)/2), each
/// result scaled to take the value 1 at u = 1.
inline std::vector<Dense> gram_schmidt_jacobi(int max_k, int n) {
  const Rational alpha = frac(n - 3, 2);
  const auto mu = jacobi_moments(alpha, 2 * max_k + 2);
  std::vector<Dense> out;
  for (int k = 0; k <= max_k; ++k) {
    Dense p(static_cast<std::size_t>(k + 1), Rational(0));
    p[static_cast<std::size_t>(k)] = 1;
    for (const auto& q : out) {
      const Rational coef = moment_inner(p, q, mu) / moment_inner(q, q, mu);
      for (std::size_t i = 0; i < q.size(); ++i) p[i] -= coef * q[i];
    }
    const Rational at_one = dense_eval(p, Rational(1));
    for (auto& c : p) c /= at_one;
    out.push_back(p);
  }
  return out;
}

/// Exact integral over [-1, 1] of a univariate polynomial.
inline Rational integrate_unit_interval(const Polynomial& p) {
  Rational acc = 0;
  for (const auto& [m, c] : p.terms()) {
    if (m[0] % 2 == 0) acc += c * frac(2, m[0] + 1);
  }
  return acc;
}

// ---------------------------------------------------------------- S_3

/// The six permutations of three exponents, written out by hand.
inline const std::array<std::array<int, 3>, 6>& all_index_maps() {
  static const std::array<std::array<int, 3>, 6> maps{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  return maps;
}

inline Monomial permute_exponents(const Monomial& m, const std::array<int, 3>& map) {
  return {m[static_cast<std::size_t>(map[0])], m[static_cast<std::size_t>(map[1])], m[static_cast<std::size_t>(map[2])]};
}

inline Polynomial permute_polynomial(const Polynomial& p, const std::array<int, 3>& map) {
  Polynomial r;
  for (const auto& [m, c] : p.terms()) r.add_term(permute_exponents(m, map), c);
  return r;
}

inline bool fixed_by_all(const Polynomial& p) {
  for (const auto& map : all_index_maps()) {
    if (!(permute_polynomial(p, map) == p)) return false;
  }
  return true;
}

/// Orbit count by enumeration of exponent triples with at most `d` total degree.
inline std::size_t brute_orbit_count(unsigned d) {
  std::size_t count = 0;
  for (unsigned a = 0; a <= d; ++a) {
    for (unsigned b = 0; b <= a; ++b) {
      for (unsigned c = 0; c <= b; ++c) {
        if (a + b + c <= d) ++count;
      }
    }
  }
  return count;
}

struct CharacterCounts {
  long trivial = 0, alternating = 0, standard = 0;
};

/// Irrep multiplicities of the permutation representation on monomials of
/// degree <= d, from the S_3 character table.
inline CharacterCounts character_counts(unsigned d) {
  long identity = 0, transposition = 0, cycle = 0;
  for (unsigned a = 0; a <= d; ++a) {
    for (unsigned b = 0; a + b <= d; ++b) {
      for (unsigned c = 0; a + b + c <= d; ++c) {
        ++identity;
        if (a == b) ++transposition;  // fixed by swapping the first two variables
        if (a == b && b == c) ++cycle;
      }
    }
  }
  CharacterCounts out;
  out.trivial = (identity + 3 * transposition + 2 * cycle) / 6;
  out.alternating = (identity - 3 * transposition + 2 * cycle) / 6;
  out.standard = (2 * identity - 2 * cycle) / 6;
  return out;
}

/// Rank of a rational matrix by exact elimination.
inline std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------- fixtures

inline ProblemConfig fixture_config(int d, Formulation mode, const char* lambda = "1e-4") {
  ProblemConfig cfg;
  cfg.n = 3;
  cfg.d = d;
  cfg.cos_theta = Rational(1, 2);
  cfg.mode = mode;
  ScopedPrecision precision(cfg.precision_bits);
  cfg.lambda_min = to_real(parse_rational(lambda));
  return cfg;
}

inline ProblemMetadata fixture_metadata(const ProblemConfig& cfg) {
  const SdpProblem problem = assemble(cfg);
  return make_metadata(problem, emit_string(problem));
}

inline std::string fixture_name(int d, Formulation mode) {
  return "n3_d" + std::to_string(d) + "_" + to_string(mode) + "_lambda1e-4.out";
}

/// Solver output recorded for n = 3, cos_theta = 1/2, lambda_min = 1e-4.
inline Solution fixture_solution(const ProblemMetadata& meta) {
  return parse_solution(data_dir() / fixture_name(meta.config.d, meta.config.mode), meta);
}

/// A solver command that copies a recorded output instead of solving.
inline std::string replay_solver(const fs::path& dir, const fs::path& recorded) {
  const fs::path script = dir / "replay.sh";
  write_file(script, "#!/bin/sh\n# usage: replay.sh -ds IN -o OUT -p PARAM\ncp '" + recorded.string() + "' \"$4\"\n");
  fs::permissions(script, fs::perms::owner_all);
  return script.string() + " -ds {in} -o {out} -p {param}";
}

// ---------------------------------------------------------------- synthetic solutions

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("synthetic solution: " + what);
}

inline Rational round_to_grid(const Rational& x, unsigned fraction_bits) {
  const mpz_class scale = mpz_class(1) << fraction_bits;
  const Rational scaled = x * scale + Rational(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational q(n, scale);
  q.canonicalize();
  return q;
}

/// True when every entry of `r` is exactly the matching rational.
inline bool to_rational_matrix_equal(const RealMatrix& r, const RationalMatrix& q) {
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = 0; j < q.dim(); ++j) {
      if (to_rational(r(i, j)) != q(i, j)) return false;
    }
  }
  return true;
}

inline RealMatrix to_real_matrix(const RationalMatrix& m) {
  RealMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = to_real(m(i, j));
  }
  return r;
}

/// A solution whose blocks the certifier reconstructs without any rounding.
struct SyntheticSolution {
  Solution solution;
  std::map<std::string, RationalMatrix> blocks;  // exact values of the rebuilt blocks
  std::vector<Rational> a;
  Rational objective;                             // 1 + sum a + b11 + sum of F_0 entries
};

/// Starts from a monomial-mode solver solution and replaces F_k, B, Q0 and Q1
/// by L L^T + lambda I, with L the Cholesky factor rounded to a 2^-40 grid and
/// lambda the power-of-two floor, and each a_k by a nonnegative dyadic. The
/// shift is folded into the stored values (lambda_shift = 0).
inline SyntheticSolution make_synthetic(const Solution& base, const ProblemMetadata& meta) {
  expect(meta.config.mode == Formulation::Monomial, "needs a monomial-mode solution");
  ScopedPrecision precision(meta.config.precision_bits);
  SyntheticSolution out;
  out.solution = base;
  out.solution.lambda_shift = 0;
  for (const auto& info : base.layout) {
    if (info.kind != BlockKind::Psd) continue;
    const RealMatrix x = base.block(info.name);
    out.solution.raw_blocks[info.name] = x;
    const bool rebuilt = info.name[0] == 'F' || info.name == "B" || info.name == "Q0" || info.name == "Q1";
    if (!rebuilt) continue;
    const CholeskyFloor floor = cholesky_floor(x, meta.config.precision_bits);
    expect(floor.ok, info.name + " is not positive definite");
    RealMatrix lower(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) lower(i, j) = to_real(round_to_grid(to_rational(floor.lower(i, j)), 40));
    }
    const RationalMatrix exact = rationalize(lower, floor.lambda);
    out.solution.raw_blocks[info.name] = to_real_matrix(exact);
    expect(to_rational_matrix_equal(out.solution.raw_blocks[info.name], exact), info.name + " is not representable");
    out.blocks.emplace(info.name, exact);
  }
  std::vector<Real> a;
  for (const auto& value : base.a()) {
    Rational q = round_to_grid(to_rational(value), 40);
    if (q < 0) q = 0;
    out.a.push_back(q);
    a.push_back(to_real(q));
  }
  out.solution.diagonals["a"] = a;

  out.objective = 1;
  for (const auto& q : out.a) out.objective += q;
  out.objective += out.blocks.at("B")(0, 0);
  const RationalMatrix& f0 = out.blocks.at(f_block_name(0));
  for (std::size_t i = 0; i < f0.dim(); ++i) {
    for (std::size_t j = 0; j < f0.dim(); ++j) out.objective += f0(i, j);
  }
  out.solution.dual_objective = out.solution.objective_constant - to_real(out.objective);
  return out;
}

}  // namespace testsupport
