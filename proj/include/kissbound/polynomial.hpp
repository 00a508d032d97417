#pragma once

#include "kissbound/numeric.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kissbound {

/// Variable order is fixed: index 0 = u, 1 = v, 2 = t.
inline constexpr std::array<char, 3> kVariableNames{'u', 'v', 't'};

struct Monomial {
  std::array<std::uint16_t, 3> exponents{0, 0, 0};

  constexpr Monomial() = default;
  constexpr Monomial(unsigned eu, unsigned ev, unsigned et)
      : exponents{static_cast<std::uint16_t>(eu), static_cast<std::uint16_t>(ev),
                  static_cast<std::uint16_t>(et)} {}

  constexpr unsigned degree() const { return unsigned{exponents[0]} + exponents[1] + exponents[2]; }
  constexpr unsigned operator[](std::size_t i) const { return exponents[i]; }

  constexpr Monomial operator*(const Monomial& o) const {
    return {unsigned{exponents[0]} + o.exponents[0], unsigned{exponents[1]} + o.exponents[1],
            unsigned{exponents[2]} + o.exponents[2]};
  }

  /// True when every exponent of `o` is at most the matching exponent here.
  constexpr bool divisible_by(const Monomial& o) const {
    return exponents[0] >= o.exponents[0] && exponents[1] >= o.exponents[1] &&
           exponents[2] >= o.exponents[2];
  }
  constexpr Monomial operator/(const Monomial& o) const {
    return {unsigned{exponents[0]} - o.exponents[0], unsigned{exponents[1]} - o.exponents[1],
            unsigned{exponents[2]} - o.exponents[2]};
  }

  constexpr bool operator==(const Monomial&) const = default;

  // Graded order: lower degree first, then larger u-exponent, then larger v-exponent.
  constexpr std::strong_ordering operator<=>(const Monomial& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    if (auto c = o.exponents[0] <=> exponents[0]; c != 0) return c;
    if (auto c = o.exponents[1] <=> exponents[1]; c != 0) return c;
    return o.exponents[2] <=> exponents[2];
  }

  std::string to_string() const;
};

/// All monomials in `num_vars` variables (1 = u only, 3 = u, v, t) of total
/// degree at most `max_degree`, in Monomial order.
std::vector<Monomial> monomials_up_to(unsigned max_degree, unsigned num_vars = 3);

/// Number of monomials of degree <= d in three variables, C(d+3, 3).
constexpr std::size_t monomial_count(unsigned d) {
  return static_cast<std::size_t>(d + 3) * (d + 2) * (d + 1) / 6;
}

template <class C>
bool coefficient_is_zero(const C& c) {
  return c == 0;
}

/// Sparse polynomial in u, v, t. No zero coefficient is ever stored, so two
/// polynomials are equal iff their term maps are equal.
template <class C>
class BasicPolynomial {
public:
  using coefficient_type = C;
  using term_map = std::map<Monomial, C>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(const C& constant) { add_term(Monomial{}, constant); }
  BasicPolynomial(std::initializer_list<std::pair<Monomial, C>> terms) {
    for (const auto& [m, c] : terms) add_term(m, c);
  }

  static BasicPolynomial variable(std::size_t index) {
    Monomial m;
    m.exponents.at(index) = 1;
    return monomial(m, C(1));
  }
  static BasicPolynomial monomial(const Monomial& m, const C& c) {
    BasicPolynomial p;
    p.add_term(m, c);
    return p;
  }
  static BasicPolynomial from_terms(const term_map& terms) {
    BasicPolynomial p;
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
  }

  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (coefficient_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coefficient_is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, C(-c));
    return *this;
  }
  BasicPolynomial& operator*=(const C& s) {
    if (coefficient_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator-(BasicPolynomial a) { return a *= C(-1); }
  friend BasicPolynomial operator*(BasicPolynomial a, const C& s) { return a *= s; }
  friend BasicPolynomial operator*(const C& s, BasicPolynomial a) { return a *= s; }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    BasicPolynomial r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, C(ca * cb));
    }
    return r;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

  BasicPolynomial pow(unsigned e) const {
    BasicPolynomial r(C(1));
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  bool operator==(const BasicPolynomial& o) const { return terms_ == o.terms_; }

  /// Evaluation at a point of any ring V that C converts into.
  template <class V>
  V evaluate(const std::array<V, 3>& point) const {
    V acc(0);
    for (const auto& [m, c] : terms_) {
      V term(c);
      for (std::size_t i = 0; i < 3; ++i) {
        for (unsigned k = 0; k < m[i]; ++k) term *= point[i];
      }
      acc += term;
    }
    return acc;
  }

  /// Coefficient-wise map into another coefficient ring.
  template <class D, class F>
  BasicPolynomial<D> map_coefficients(F&& f) const {
    BasicPolynomial<D> r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  /// Substitutes (u, v, t) -> (u, u, 1); the result is univariate in u.
  BasicPolynomial restrict_to_diagonal() const {
    BasicPolynomial r;
    for (const auto& [m, c] : terms_) r.add_term(Monomial{m[0] + m[1], 0, 0}, c);
    return r;
  }

  std::string to_string() const;

private:
  term_map terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using RealPolynomial = BasicPolynomial<Real>;

RealPolynomial to_real(const Polynomial& p);

std::string coefficient_string(const Rational& c);
std::string coefficient_string(const Real& c);

template <class C>
std::string BasicPolynomial<C>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << coefficient_string(c);
    if (m.degree() > 0) out << '*' << m.to_string();
  }
  return out.str();
}

/// Square matrix with polynomial entries, stored row-major.
template <class C>
class BasicPolyMatrix {
public:
  BasicPolyMatrix() = default;
  explicit BasicPolyMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  BasicPolynomial<C>& at(std::size_t i, std::size_t j) { return entries_.at(i * dim_ + j); }
  const BasicPolynomial<C>& at(std::size_t i, std::size_t j) const { return entries_.at(i * dim_ + j); }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        if (!(at(i, j) == at(j, i))) return false;
      }
    }
    return true;
  }

  int degree() const {
    int d = -1;
    for (const auto& p : entries_) d = std::max(d, p.degree());
    return d;
  }

  bool operator==(const BasicPolyMatrix&) const = default;

private:
  std::size_t dim_ = 0;
  std::vector<BasicPolynomial<C>> entries_;
};

using PolyMatrix = BasicPolyMatrix<Rational>;
using RealPolyMatrix = BasicPolyMatrix<Real>;

/// The polynomial 1 + 2uvt - u^2 - v^2 - t^2.
Polynomial gram_determinant();

/// g(u) = (u + 1)(cos_theta - u), in the variable with the given index.
Polynomial interval_polynomial(const Rational& cos_theta, std::size_t variable = 0);

}  // namespace kissbound
