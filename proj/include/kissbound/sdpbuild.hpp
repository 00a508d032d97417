#pragma once

#include "kissbound/orthopoly.hpp"
#include "kissbound/polynomial.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kissbound {

enum class Formulation { Reduced, Monomial };

std::string to_string(Formulation f);
Formulation parse_formulation(const std::string& text);

struct ProblemConfig {
  int n = 3;
  int d = 3;
  Rational cos_theta{1, 2};
  Real lambda_min = 0;
  Formulation mode = Formulation::Reduced;
  unsigned precision_bits = kDefaultPrecisionBits;

  SdpShape shape() const { return {n, d, cos_theta}; }
  void validate() const;
};

enum class BlockKind { Psd, Diagonal };

struct BlockInfo {
  std::string name;
  std::size_t dim = 0;
  BlockKind kind = BlockKind::Psd;
};

/// Coefficient of a symmetric block entry. For row < col the entry stands for
/// both (row, col) and (col, row), so its contribution is 2 * value * X(row, col).
struct MatrixEntry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Real value;
};

enum class Relation { Equal, LessEqual };

struct ConstraintRow {
  std::string label;
  std::vector<MatrixEntry> entries;
  Real rhs;
  Relation relation = Relation::Equal;
};

/// minimize objective_constant + <objective, X> subject to the rows, with every
/// Psd block positive semidefinite and every Diagonal block nonnegative.
struct SdpProblem {
  ProblemConfig config;
  std::vector<BlockInfo> blocks;
  std::vector<ConstraintRow> rows;
  std::vector<MatrixEntry> objective;
  Real objective_constant;
  /// lambda already substituted into every Psd block (X = X' + lambda I).
  Real lambda_shift = 0;
  std::size_t constraint_i_rows = 0;
  std::size_t constraint_ii_rows = 0;

  std::size_t block_index(const std::string& name) const;
  std::optional<std::size_t> find_block(const std::string& name) const;
};

/// Delta through the g_i and through the invariant s_i.
struct DeltaSystem {
  std::array<Polynomial, 4> g;
  std::array<Polynomial, 4> s;
};

DeltaSystem delta_system(const Rational& cos_theta);

enum class DeltaVia { G, S };

bool delta_membership(const std::array<Rational, 3>& point, const Rational& cos_theta, DeltaVia via);
bool delta_membership(const std::array<Rational, 3>& point, const DeltaSystem& system, DeltaVia via);

/// Sum-of-squares multiplier j (0 = unit, 1..4 = s_1..s_4) of constraint (ii).
struct Multiplier {
  int index = 0;
  int degree = 0;  // degree of the monomial basis of its Gram matrix
};

/// Multipliers with a nonempty basis; s_1..s_4 have degrees 2, 4, 6, 3.
std::vector<Multiplier> constraint_ii_multipliers(int d);

inline const std::array<const char*, 3> kIsotypicNames{"trv", "alt", "std"};

std::string f_block_name(int k);
std::string r_block_name(int multiplier);
std::string r_block_name(int multiplier, std::size_t isotypic);

/// Blocks in emission order for a configuration.
std::vector<BlockInfo> block_layout(const ProblemConfig& cfg);

std::vector<ConstraintRow> build_constraint_i(const ProblemConfig& cfg, const std::vector<BlockInfo>& layout);
std::vector<ConstraintRow> build_constraint_ii(const ProblemConfig& cfg, const std::vector<BlockInfo>& layout);

SdpProblem apply_lambda_shift(SdpProblem prob, const Real& lambda_min);

SdpProblem assemble(const ProblemConfig& cfg);

}  // namespace kissbound
