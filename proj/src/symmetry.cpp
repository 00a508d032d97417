#include "kissbound/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kissbound {

const std::array<Permutation, 6>& Permutation::all() {
  static const std::array<Permutation, 6> elements{
      Permutation({0, 1, 2}), Permutation({1, 0, 2}), Permutation({2, 1, 0}),
      Permutation({0, 2, 1}), Permutation({1, 2, 0}), Permutation({2, 0, 1})};
  return elements;
}

Permutation Permutation::inverse() const {
  std::array<int, 3> inv{};
  for (int i = 0; i < 3; ++i) inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(i)])] = i;
  return Permutation(inv);
}

int Permutation::sign() const {
  int inversions = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) inversions += image_[i] > image_[j] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Monomial Permutation::apply(const Monomial& m) const {
  Monomial r;
  for (std::size_t i = 0; i < 3; ++i) r.exponents[static_cast<std::size_t>(image_[i])] = m.exponents[i];
  return r;
}

Polynomial symmetrize(const Polynomial& p) {
  Polynomial acc;
  for (const auto& sigma : Permutation::all()) acc += act(sigma, p);
  return acc * Rational(1, 6);
}

bool is_invariant(const Polynomial& p) {
  for (const auto& sigma : Permutation::all()) {
    if (!(act(sigma, p) == p)) return false;
  }
  return true;
}

Monomial orbit_representative(const Monomial& m) {
  auto e = m.exponents;
  std::sort(e.begin(), e.end(), std::greater<>());
  return {e[0], e[1], e[2]};
}

std::vector<Monomial> orbit(const Monomial& m) {
  std::vector<Monomial> out;
  for (const auto& sigma : Permutation::all()) out.push_back(sigma.apply(m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Monomial> orbit_representatives(unsigned max_degree) {
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    for (unsigned a = deg + 1; a-- > 0;) {
      for (unsigned b = std::min(a, deg - a) + 1; b-- > 0;) {
        const unsigned c = deg - a - b;
        if (c <= b) out.emplace_back(a, b, c);
      }
    }
  }
  return out;
}

std::vector<PowerSumTriple> power_sum_triples(unsigned max_degree) {
  std::vector<PowerSumTriple> out;
  for (unsigned w = 0; w <= max_degree; ++w) {
    for (unsigned c = 0; 3 * c <= w; ++c) {
      for (unsigned b = 0; 3 * c + 2 * b <= w; ++b) out.push_back({w - 3 * c - 2 * b, b, c});
    }
  }
  return out;
}

std::vector<Polynomial> invariant_basis(unsigned max_degree) {
  std::array<Polynomial, 3> power_sums;
  for (unsigned k = 1; k <= 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      Monomial m;
      m.exponents[i] = static_cast<std::uint16_t>(k);
      power_sums[k - 1].add_term(m, Rational(1));
    }
  }
  std::vector<Polynomial> out;
  for (const auto& tr : power_sum_triples(max_degree)) {
    out.push_back(power_sums[0].pow(tr.a) * power_sums[1].pow(tr.b) * power_sums[2].pow(tr.c));
  }
  return out;
}

std::vector<Polynomial> orbit_basis(unsigned max_degree) {
  std::vector<Polynomial> out;
  for (const auto& rep : orbit_representatives(max_degree)) {
    Polynomial p;
    for (const auto& m : orbit(rep)) p.add_term(m, Rational(1));
    out.push_back(std::move(p));
  }
  return out;
}

IsotypicCounts isotypic_counts(unsigned d) {
  IsotypicCounts counts;
  for (const auto& rep : orbit_representatives(d)) {
    switch (orbit(rep).size()) {
      case 1: counts.a += 1; break;
      case 3: counts.a += 1; counts.c += 1; break;
      case 6: counts.a += 1; counts.b += 1; counts.c += 2; break;
      default: throw std::logic_error("unexpected S3 orbit size");
    }
  }
  return counts;
}

namespace {

Real dot(const RealPolynomial& p, const RealPolynomial& q) {
  Real acc = 0;
  const auto& small = p.size() <= q.size() ? p : q;
  const auto& large = p.size() <= q.size() ? q : p;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it != large.terms().end()) acc += c * it->second;
  }
  return acc;
}

Real negligible() {
  // Well above the rounding level, far below any genuine coefficient.
  Real eps = 10;
  return boost::multiprecision::pow(eps, -static_cast<int>(Real::default_precision()) / 2);
}

// Orthogonal realization of the standard irreducible: the permutation action
// on the plane orthogonal to (1, 1, 1) in the basis (1,-1,0)/sqrt2, (1,1,-2)/sqrt6.
std::array<std::array<Real, 4>, 6> standard_matrices() {
  const Real s2 = boost::multiprecision::sqrt(Real(2));
  const Real s6 = boost::multiprecision::sqrt(Real(6));
  const std::array<std::array<Real, 3>, 2> frame{
      std::array<Real, 3>{1 / s2, -1 / s2, Real(0)},
      std::array<Real, 3>{1 / s6, 1 / s6, -2 / s6}};
  std::array<std::array<Real, 4>, 6> out;
  for (std::size_t g = 0; g < 6; ++g) {
    const auto& sigma = Permutation::all()[g];
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        // rho_ab = f_a . P_sigma f_b with (P_sigma x)_{sigma(i)} = x_i.
        Real acc = 0;
        for (std::size_t i = 0; i < 3; ++i) {
          acc += frame[a][static_cast<std::size_t>(sigma(static_cast<int>(i)))] * frame[b][i];
        }
        out[g][2 * a + b] = acc;
      }
    }
  }
  return out;
}

// sum_g weight[g] * (g p) for a real polynomial.
RealPolynomial apply_group_sum(const std::array<Real, 6>& weight, const RealPolynomial& p) {
  RealPolynomial r;
  for (std::size_t g = 0; g < 6; ++g) {
    if (weight[g] == 0) continue;
    RealPolynomial moved = act(Permutation::all()[g], p);
    r += moved * weight[g];
  }
  return r;
}

RealPolynomial chop(const RealPolynomial& p, const Real& eps) {
  RealPolynomial r;
  for (const auto& [m, c] : p.terms()) {
    if (boost::multiprecision::abs(c) > eps) r.add_term(m, c);
  }
  return r;
}

// Gram-Schmidt against `accepted`; appends the normalized remainder if it is
// not numerically dependent.
void orthonormal_extend(std::vector<RealPolynomial>& accepted, RealPolynomial candidate, const Real& eps) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : accepted) candidate -= e * dot(e, candidate);
  }
  const Real norm = boost::multiprecision::sqrt(dot(candidate, candidate));
  if (norm <= eps) return;
  accepted.push_back(chop(candidate * Real(1 / norm), eps));
}

}  // namespace

SymmetryAdaptedBasis symmetry_adapted_basis(unsigned d) {
  SymmetryAdaptedBasis basis;
  basis.d = d;
  const Real eps = negligible();
  const auto rho = standard_matrices();

  std::array<Real, 6> w_trv, w_alt, w_11, w_21;
  for (std::size_t g = 0; g < 6; ++g) {
    w_trv[g] = Real(1) / 6;
    w_alt[g] = Real(Permutation::all()[g].sign()) / 6;
    // Serre's p_{ab} = (dim/|G|) sum_g rho(g^-1)_{ba} g, and rho(g^-1) = rho(g)^T.
    w_11[g] = rho[g][0] * 2 / 6;
    w_21[g] = rho[g][2] * 2 / 6;
  }

  for (const auto& rep : orbit_representatives(d)) {
    const auto members = orbit(rep);
    std::vector<RealPolynomial> trv, alt, first;
    for (const auto& m : members) {
      const RealPolynomial x = RealPolynomial::monomial(m, Real(1));
      orthonormal_extend(trv, apply_group_sum(w_trv, x), eps);
      orthonormal_extend(alt, apply_group_sum(w_alt, x), eps);
      orthonormal_extend(first, apply_group_sum(w_11, x), eps);
    }
    for (auto& p : trv) basis.trivial.push_back(std::move(p));
    for (auto& p : alt) basis.alternating.push_back(std::move(p));
    for (auto& e1 : first) {
      RealPolynomial e2 = chop(apply_group_sum(w_21, e1), eps);
      basis.standard.emplace_back(std::move(e1), std::move(e2));
    }
  }
  return basis;
}

IsotypicVMatrices v_matrices(const SymmetryAdaptedBasis& basis) {
  const Real eps = negligible();
  auto gram = [&](std::size_t dim, auto&& entry) {
    RealPolyMatrix v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t l = k; l < dim; ++l) {
        v.at(k, l) = chop(entry(k, l), eps);
        if (l != k) v.at(l, k) = v.at(k, l);
      }
    }
    return v;
  };
  IsotypicVMatrices out;
  out.v_trv = gram(basis.a(), [&](std::size_t k, std::size_t l) {
    return basis.trivial[k] * basis.trivial[l];
  });
  out.v_alt = gram(basis.b(), [&](std::size_t k, std::size_t l) {
    return basis.alternating[k] * basis.alternating[l];
  });
  out.v_std = gram(basis.c(), [&](std::size_t k, std::size_t l) {
    return basis.standard[k].first * basis.standard[l].first +
           basis.standard[k].second * basis.standard[l].second;
  });
  return out;
}

IsotypicVMatrices v_matrices(unsigned d) { return v_matrices(symmetry_adapted_basis(d)); }

}  // namespace kissbound
