#include "kissbound/sdpbuild.hpp"

#include "kissbound/symmetry.hpp"

#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace kissbound {

std::string to_string(Formulation f) { return f == Formulation::Reduced ? "reduced" : "monomial"; }

Formulation parse_formulation(const std::string& text) {
  if (text == "reduced") return Formulation::Reduced;
  if (text == "monomial") return Formulation::Monomial;
  throw std::invalid_argument("mode must be 'reduced' or 'monomial', got '" + text + "'");
}

void ProblemConfig::validate() const {
  shape().validate();
  if (lambda_min < 0) throw std::invalid_argument("lambda_min must be nonnegative");
  if (precision_bits < 53) throw std::invalid_argument("precision_bits must be at least 53");
}

std::optional<std::size_t> SdpProblem::find_block(const std::string& name) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SdpProblem::block_index(const std::string& name) const {
  if (auto i = find_block(name)) return *i;
  throw std::out_of_range("no block named '" + name + "'");
}

DeltaSystem delta_system(const Rational& cos_theta) {
  DeltaSystem sys;
  for (std::size_t i = 0; i < 3; ++i) sys.g[i] = interval_polynomial(cos_theta, i);
  sys.g[3] = gram_determinant();
  const auto& g = sys.g;
  sys.s[0] = g[0] + g[1] + g[2];
  sys.s[1] = g[0] * g[1] + g[0] * g[2] + g[1] * g[2];
  sys.s[2] = g[0] * g[1] * g[2];
  sys.s[3] = g[3];
  return sys;
}

bool delta_membership(const std::array<Rational, 3>& point, const DeltaSystem& system, DeltaVia via) {
  const auto& polys = via == DeltaVia::G ? system.g : system.s;
  for (const auto& p : polys) {
    if (p.evaluate(point) < 0) return false;
  }
  return true;
}

bool delta_membership(const std::array<Rational, 3>& point, const Rational& cos_theta, DeltaVia via) {
  return delta_membership(point, delta_system(cos_theta), via);
}

std::vector<Multiplier> constraint_ii_multipliers(int d) {
  const std::array<int, 5> degrees{d, d - 1, d - 2, d - 3, d - 2};
  std::vector<Multiplier> out;
  for (int j = 0; j < 5; ++j) {
    if (degrees[static_cast<std::size_t>(j)] >= 0) out.push_back({j, degrees[static_cast<std::size_t>(j)]});
  }
  return out;
}

std::string f_block_name(int k) { return "F" + std::to_string(k); }
std::string r_block_name(int multiplier) { return "R" + std::to_string(multiplier); }
std::string r_block_name(int multiplier, std::size_t isotypic) {
  return r_block_name(multiplier) + "." + kIsotypicNames.at(isotypic);
}

std::vector<BlockInfo> block_layout(const ProblemConfig& cfg) {
  std::vector<BlockInfo> blocks;
  const auto d = static_cast<std::size_t>(cfg.d);
  for (int k = 0; k <= cfg.d; ++k) blocks.push_back({f_block_name(k), d - static_cast<std::size_t>(k) + 1});
  blocks.push_back({"B", 2});
  blocks.push_back({"a", d, BlockKind::Diagonal});
  blocks.push_back({"Q0", d + 1});
  blocks.push_back({"Q1", d});
  for (const auto& mult : constraint_ii_multipliers(cfg.d)) {
    if (cfg.mode == Formulation::Monomial) {
      blocks.push_back({r_block_name(mult.index), monomial_count(static_cast<unsigned>(mult.degree))});
      continue;
    }
    const auto counts = isotypic_counts(static_cast<unsigned>(mult.degree));
    const std::array<std::size_t, 3> dims{counts.a, counts.b, counts.c};
    for (std::size_t iso = 0; iso < 3; ++iso) {
      if (dims[iso] > 0) blocks.push_back({r_block_name(mult.index, iso), dims[iso]});
    }
  }
  return blocks;
}

namespace {

using EntryKey = std::tuple<std::size_t, std::size_t, std::size_t>;

// Per-row accumulation; exact and floating contributions are kept apart
// until the row is finalized.
struct RowAccumulator {
  std::map<EntryKey, Rational> exact;
  std::map<EntryKey, Real> approx;

  void add(std::size_t block, std::size_t r, std::size_t c, const Rational& v) {
    if (v != 0) exact[{block, std::min(r, c), std::max(r, c)}] += v;
  }
  void add(std::size_t block, std::size_t r, std::size_t c, const Real& v) {
    if (v != 0) approx[{block, std::min(r, c), std::max(r, c)}] += v;
  }

  std::vector<MatrixEntry> finalize() const {
    std::map<EntryKey, Real> merged = approx;
    for (const auto& [key, value] : exact) {
      auto [it, inserted] = merged.try_emplace(key, to_real(value));
      if (!inserted) it->second += to_real(value);
    }
    std::vector<MatrixEntry> out;
    for (const auto& [key, value] : merged) {
      if (value == 0) continue;
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
    }
    return out;
  }
};

std::size_t index_of(const std::vector<BlockInfo>& layout, const std::string& name) {
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].name == name) return i;
  }
  throw std::out_of_range("layout has no block '" + name + "'");
}

std::size_t orbit_size(const Monomial& m) {
  const auto& e = m.exponents;
  if (e[0] == e[1] && e[1] == e[2]) return 1;
  if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]) return 3;
  return 6;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    return (std::size_t{m[0]} * 1315423911u) ^ (std::size_t{m[1]} * 2654435761u) ^ std::size_t{m[2]};
  }
};

Real sanity_tolerance() {
  Real ten = 10;
  return boost::multiprecision::pow(ten, -static_cast<int>(Real::default_precision()) / 2);
}

}  // namespace

std::vector<ConstraintRow> build_constraint_i(const ProblemConfig& cfg, const std::vector<BlockInfo>& layout) {
  const int d = cfg.d;
  const auto num_rows = static_cast<std::size_t>(2 * d + 1);
  std::vector<RowAccumulator> acc(num_rows);

  const std::size_t a_block = index_of(layout, "a");
  for (int k = 1; k <= d; ++k) {
    const Polynomial pk = jacobi(k, cfg.n);
    for (const auto& [m, c] : pk.terms()) {
      acc.at(m[0]).add(a_block, static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k - 1), c);
    }
  }

  // 2 b_12 + b_22: the off-diagonal entry counts twice under the symmetric convention.
  const std::size_t b_block = index_of(layout, "B");
  acc[0].add(b_block, 0, 1, Rational(1));
  acc[0].add(b_block, 1, 1, Rational(1));

  const SdpShape shape = cfg.shape();
  for (int k = 0; k <= d; ++k) {
    const PolyMatrix s = s_matrix(k, shape);
    const std::size_t block = index_of(layout, f_block_name(k));
    for (std::size_t i = 0; i < s.dim(); ++i) {
      for (std::size_t j = i; j < s.dim(); ++j) {
        const Polynomial diagonal = s.at(i, j).restrict_to_diagonal();
        for (const auto& [m, c] : diagonal.terms()) {
          acc.at(m[0]).add(block, i, j, Rational(3 * c));
        }
      }
    }
  }

  const std::size_t q0 = index_of(layout, "Q0");
  for (std::size_t r = 0; r <= static_cast<std::size_t>(d); ++r) {
    for (std::size_t s = r; s <= static_cast<std::size_t>(d); ++s) acc.at(r + s).add(q0, r, s, Rational(1));
  }
  const std::size_t q1 = index_of(layout, "Q1");
  const Polynomial g = interval_polynomial(cfg.cos_theta);
  for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r) {
    for (std::size_t s = r; s < static_cast<std::size_t>(d); ++s) {
      for (const auto& [m, c] : g.terms()) acc.at(m[0] + r + s).add(q1, r, s, c);
    }
  }

  std::vector<ConstraintRow> rows;
  for (std::size_t j = 0; j < num_rows; ++j) {
    ConstraintRow row;
    row.label = "i:" + Monomial{static_cast<unsigned>(j), 0, 0}.to_string();
    row.entries = acc[j].finalize();
    row.rhs = j == 0 ? Real(-1) : Real(0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConstraintRow> build_constraint_ii(const ProblemConfig& cfg, const std::vector<BlockInfo>& layout) {
  const int d = cfg.d;
  const auto reps = orbit_representatives(static_cast<unsigned>(2 * d));
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  for (std::size_t i = 0; i < reps.size(); ++i) row_of.emplace(reps[i], i);
  std::vector<RowAccumulator> acc(reps.size());
  auto row_for = [&](const Monomial& m) -> RowAccumulator& {
    return acc.at(row_of.at(orbit_representative(m)));
  };

  acc[0].add(index_of(layout, "B"), 1, 1, Rational(1));

  // S_k entries are invariant, so the representative carries the orbit coefficient.
  const SdpShape shape = cfg.shape();
  for (int k = 0; k <= d; ++k) {
    const PolyMatrix s = s_matrix(k, shape);
    const std::size_t block = index_of(layout, f_block_name(k));
    for (std::size_t i = 0; i < s.dim(); ++i) {
      for (std::size_t j = i; j < s.dim(); ++j) {
        for (const auto& [m, c] : s.at(i, j).terms()) {
          if (orbit_representative(m) == m) acc.at(row_of.at(m)).add(block, i, j, c);
        }
      }
    }
  }

  const DeltaSystem delta = delta_system(cfg.cos_theta);
  auto multiplier_poly = [&](int j) { return j == 0 ? Polynomial(Rational(1)) : delta.s[static_cast<std::size_t>(j - 1)]; };

  if (cfg.mode == Formulation::Monomial) {
    for (const auto& mult : constraint_ii_multipliers(d)) {
      const std::size_t block = index_of(layout, r_block_name(mult.index));
      const auto basis = monomials_up_to(static_cast<unsigned>(mult.degree));
      const Polynomial sj = multiplier_poly(mult.index);
      for (std::size_t r = 0; r < basis.size(); ++r) {
        for (std::size_t s = r; s < basis.size(); ++s) {
          const Monomial pair = basis[r] * basis[s];
          for (const auto& [m, c] : sj.terms()) {
            const Monomial target = m * pair;
            row_for(target).add(block, r, s, Rational(c / static_cast<long>(orbit_size(target))));
          }
        }
      }
    }
  } else {
    const Real tol = sanity_tolerance();
    std::map<int, IsotypicVMatrices> v_cache;
    for (const auto& mult : constraint_ii_multipliers(d)) {
      auto it = v_cache.find(mult.degree);
      if (it == v_cache.end()) it = v_cache.emplace(mult.degree, v_matrices(static_cast<unsigned>(mult.degree))).first;
      const std::array<const RealPolyMatrix*, 3> vs{&it->second.v_trv, &it->second.v_alt, &it->second.v_std};
      const RealPolynomial sj = to_real(multiplier_poly(mult.index));
      for (std::size_t iso = 0; iso < 3; ++iso) {
        const RealPolyMatrix& v = *vs[iso];
        if (v.dim() == 0) continue;
        const std::size_t block = index_of(layout, r_block_name(mult.index, iso));
        if (layout[block].dim != v.dim()) throw std::logic_error("isotypic block dimension mismatch");
        for (std::size_t k = 0; k < v.dim(); ++k) {
          for (std::size_t l = k; l < v.dim(); ++l) {
            const RealPolynomial p = sj * v.at(k, l);
            for (const auto& [m, c] : p.terms()) {
              const Monomial rep = orbit_representative(m);
              if (rep == m) {
                acc.at(row_of.at(m)).add(block, k, l, c);
              } else if (boost::multiprecision::abs(c - p.coefficient(rep)) > tol * (1 + boost::multiprecision::abs(c))) {
                throw std::logic_error("non-invariant entry in " + layout[block].name + " at " + m.to_string());
              }
            }
          }
        }
      }
    }
  }

  std::vector<ConstraintRow> rows;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    ConstraintRow row;
    row.label = "ii:" + reps[i].to_string();
    row.entries = acc[i].finalize();
    if (row.entries.empty()) throw std::logic_error("empty constraint row " + row.label);
    row.rhs = 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

SdpProblem apply_lambda_shift(SdpProblem prob, const Real& lambda_min) {
  if (lambda_min < 0) throw std::invalid_argument("lambda_min must be nonnegative");
  if (lambda_min == 0) return prob;
  auto shifts = [&](const MatrixEntry& e) {
    return prob.blocks.at(e.block).kind == BlockKind::Psd && e.row == e.col;
  };
  for (auto& row : prob.rows) {
    for (const auto& e : row.entries) {
      if (shifts(e)) row.rhs -= lambda_min * e.value;
    }
  }
  for (const auto& e : prob.objective) {
    if (shifts(e)) prob.objective_constant += lambda_min * e.value;
  }
  prob.lambda_shift += lambda_min;
  return prob;
}

SdpProblem assemble(const ProblemConfig& cfg) {
  cfg.validate();
  ScopedPrecision precision(cfg.precision_bits);

  SdpProblem prob;
  prob.config = cfg;
  prob.blocks = block_layout(cfg);
  prob.rows = build_constraint_i(cfg, prob.blocks);
  prob.constraint_i_rows = prob.rows.size();
  auto rows_ii = build_constraint_ii(cfg, prob.blocks);
  prob.constraint_ii_rows = rows_ii.size();
  for (auto& r : rows_ii) prob.rows.push_back(std::move(r));

  // 1 + sum a_k + b_11 + <J, F_0>
  prob.objective_constant = 1;
  for (std::size_t k = 0; k < static_cast<std::size_t>(cfg.d); ++k) {
    prob.objective.push_back({prob.block_index("a"), k, k, Real(1)});
  }
  prob.objective.push_back({prob.block_index("B"), 0, 0, Real(1)});
  const std::size_t f0 = prob.block_index(f_block_name(0));
  for (std::size_t i = 0; i < prob.blocks[f0].dim; ++i) {
    for (std::size_t j = i; j < prob.blocks[f0].dim; ++j) prob.objective.push_back({f0, i, j, Real(1)});
  }
  return apply_lambda_shift(std::move(prob), cfg.lambda_min);
}

}  // namespace kissbound
