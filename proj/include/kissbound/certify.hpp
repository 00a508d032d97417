#pragma once

#include "kissbound/matrix.hpp"
#include "kissbound/solverio.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kissbound {

/// Replaces every group of isotypic blocks R_j.trv / R_j.alt / R_j.std by the
/// congruent Gram matrix R_j over monomials_up_to(deg). Identity on
/// monomial-mode solutions.
Solution expand_blocks(const Solution& sol, const ProblemMetadata& meta);

struct CholeskyFloor {
  bool ok = false;
  Real lambda;      // largest power of two with X - lambda I numerically PD
  RealMatrix lower;  // factor of X - lambda I
};

/// Searches lambda over powers of two, starting at the smallest one not
/// exceeding the least diagonal entry, down to 2^-precision_bits relative to it.
CholeskyFloor cholesky_floor(const RealMatrix& x, unsigned precision_bits);

/// Plain Cholesky at the current precision; nullopt unless every pivot is positive.
std::optional<RealMatrix> cholesky(const RealMatrix& x);

/// L L^T + lambda I with L and lambda read as exact dyadic rationals.
RationalMatrix rationalize(const RealMatrix& lower, const Real& lambda);

/// (1/6) sum over S_3 of P_sigma R P_sigma^T, where P_sigma permutes `basis`.
RationalMatrix symmetrize_gram(const RationalMatrix& r, const std::vector<Monomial>& basis);

/// <V, R> = sum_{i,j} R_ij basis_i basis_j.
Polynomial gram_polynomial(const RationalMatrix& r, const std::vector<Monomial>& basis);

/// Exact reconstructed solution in monomial form.
struct RationalSolution {
  std::map<std::string, RationalMatrix> blocks;
  std::vector<Rational> a;

  Rational objective() const;
};

struct Residuals {
  Polynomial constraint_i;   // univariate; zero when (i) holds exactly
  Polynomial constraint_ii;  // zero when (ii) holds exactly
};

Residuals residual(const RationalSolution& sol, const ProblemMetadata& meta);

/// Greedy half: exponents taken in the order u, v, t up to ceil(deg / 2).
std::pair<Monomial, Monomial> canonical_split(const Monomial& m);

struct Absorption {
  RationalMatrix correction;  // <V, correction> = r
  Rational norm_squared;      // Frobenius
  bool ok = false;            // norm_squared <= lambda^2
};

/// Throws std::logic_error when a monomial of r does not split inside `basis`.
Absorption absorb(const Polynomial& r, const std::vector<Monomial>& basis, const Rational& lambda_floor);

enum class CertStatus { Certified, PdFailed, NormTestFailed, MetadataMismatch, SanityEnvelopeFailed };

std::string to_string(CertStatus status);

struct BlockFloor {
  std::string name;
  std::size_t dim = 0;
  bool ok = false;
  Rational lambda;
};

struct FamilyNorm {
  std::string family;  // "i" or "ii"
  std::string absorbing_block;
  Rational norm_squared;
  Rational lambda;
  bool ok = false;
  Rational max_coefficient;  // largest |coefficient| of the residual before absorption
};

struct ResidualReport {
  std::vector<BlockFloor> floors;
  std::vector<FamilyNorm> families;
  std::size_t clipped_scalars = 0;
};

struct CertifiedBound {
  int n = 0;
  int d = 0;
  Rational cos_theta;
  CertStatus status = CertStatus::MetadataMismatch;
  std::string message;
  std::optional<Rational> bound;
  std::string bound_decimal;
  Real solver_objective;
  ResidualReport audit;
  std::string problem_sha256;
  std::string solution_sha256;
  std::string timestamp;

  bool certified() const { return status == CertStatus::Certified; }
};

struct CertifyOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string solution_sha256;
  /// Keeps the reconstructed exact solution (after absorption) in `reconstructed`.
  RationalSolution* reconstructed = nullptr;
};

CertifiedBound certify(const Solution& sol, const ProblemMetadata& meta, const CertifyOptions& options = {});

/// Report JSON with the fields n, d, cos_theta, certified_bound_rational,
/// certified_bound_decimal, lambda_per_block, residual_norms, status, solver_objective.
std::string report_to_json(const CertifiedBound& cert);

}  // namespace kissbound
