#pragma once

#include "kissbound/polynomial.hpp"

#include <array>
#include <vector>

namespace kissbound {

/// Element of S_3 as a bijection on the variable indices {0: u, 1: v, 2: t}.
/// image[i] is where variable i is sent.
class Permutation {
public:
  constexpr Permutation() = default;
  constexpr explicit Permutation(std::array<int, 3> image) : image_(image) {}

  static const std::array<Permutation, 6>& all();

  constexpr int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  constexpr const std::array<int, 3>& image() const { return image_; }

  /// (a * b)(i) = a(b(i)).
  constexpr Permutation operator*(const Permutation& o) const {
    return Permutation({image_[static_cast<std::size_t>(o.image_[0])],
                        image_[static_cast<std::size_t>(o.image_[1])],
                        image_[static_cast<std::size_t>(o.image_[2])]});
  }
  Permutation inverse() const;
  int sign() const;

  constexpr bool operator==(const Permutation&) const = default;

  /// Image of a monomial under the induced action: variable i of m becomes variable sigma(i).
  Monomial apply(const Monomial& m) const;

private:
  std::array<int, 3> image_{0, 1, 2};
};

/// (sigma p)(x) = p(sigma^{-1} x). This is a left action.
template <class C>
BasicPolynomial<C> act(const Permutation& sigma, const BasicPolynomial<C>& p) {
  BasicPolynomial<C> r;
  for (const auto& [m, c] : p.terms()) r.add_term(sigma.apply(m), c);
  return r;
}

/// (1/6) sum over S_3 of sigma p.
Polynomial symmetrize(const Polynomial& p);
bool is_invariant(const Polynomial& p);

/// Canonical representative of the orbit of m: exponents sorted non-increasingly.
Monomial orbit_representative(const Monomial& m);

/// Distinct monomials in the S_3-orbit of m, in Monomial order.
std::vector<Monomial> orbit(const Monomial& m);

/// Orbit representatives of all monomials of degree <= max_degree, in Monomial order.
std::vector<Monomial> orbit_representatives(unsigned max_degree);

/// Exponent triple (a, b, c) of (u+v+t)^a (u^2+v^2+t^2)^b (u^3+v^3+t^3)^c.
struct PowerSumTriple {
  unsigned a = 0, b = 0, c = 0;
  unsigned weight() const { return a + 2 * b + 3 * c; }
};

std::vector<PowerSumTriple> power_sum_triples(unsigned max_degree);

/// Power-sum products of weight <= max_degree: a basis of the invariant
/// polynomials of degree <= max_degree.
std::vector<Polynomial> invariant_basis(unsigned max_degree);

/// Orbit sums of monomials of degree <= max_degree, one per orbit, in the
/// order of orbit_representatives.
std::vector<Polynomial> orbit_basis(unsigned max_degree);

/// Symmetry-adapted basis of R[u, v, t]_{<= d}, orthonormal with respect to the
/// inner product making the monomials orthonormal. Every `standard` pair is one
/// copy of the two-dimensional irreducible; its second member is the image of
/// the first under the same transfer map for all copies.
struct SymmetryAdaptedBasis {
  unsigned d = 0;
  std::vector<RealPolynomial> trivial;
  std::vector<RealPolynomial> alternating;
  std::vector<std::pair<RealPolynomial, RealPolynomial>> standard;

  std::size_t a() const { return trivial.size(); }
  std::size_t b() const { return alternating.size(); }
  std::size_t c() const { return standard.size(); }
};

/// Built with the Serre projection operators at the current working precision.
SymmetryAdaptedBasis symmetry_adapted_basis(unsigned d);

/// Isotypic multiplicities (a, b, c) counted from orbit sizes; no floating point.
struct IsotypicCounts {
  std::size_t a = 0, b = 0, c = 0;
};
IsotypicCounts isotypic_counts(unsigned d);

/// V^trv_d, V^alt_d, V^std_d: entry (k, l) = sum over alpha of phi_k(e_alpha) * phi_l(e_alpha).
struct IsotypicVMatrices {
  RealPolyMatrix v_trv;
  RealPolyMatrix v_alt;
  RealPolyMatrix v_std;
};

IsotypicVMatrices v_matrices(const SymmetryAdaptedBasis& basis);
IsotypicVMatrices v_matrices(unsigned d);

}  // namespace kissbound
