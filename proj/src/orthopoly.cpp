#include "kissbound/orthopoly.hpp"

#include "kissbound/symmetry.hpp"

#include <stdexcept>
#include <string>

namespace kissbound {

void SdpShape::validate() const {
  if (n < 3) throw std::invalid_argument("dimension n must be at least 3, got " + std::to_string(n));
  if (d < 1) throw std::invalid_argument("degree d must be at least 1, got " + std::to_string(d));
  if (cos_theta <= -1 || cos_theta >= 1) {
    throw std::invalid_argument("cos_theta must lie in (-1, 1), got " + cos_theta.get_str());
  }
}

namespace {

// P_0 .. P_max_k for parameter n, normalized at 1. For the normalized family
// R_k = P_k^{(a,a)} / P_k^{(a,a)}(1) with 2a + 1 = n - 2 the recurrence reads
//   (k + n - 2) R_{k+1} = (2k + n - 2) u R_k - k R_{k-1},   k >= 1,
// which stays regular at the Chebyshev parameter n = 2.
std::vector<Polynomial> jacobi_sequence(int max_k, int n) {
  std::vector<Polynomial> seq;
  seq.reserve(static_cast<std::size_t>(max_k) + 1);
  seq.emplace_back(Rational(1));
  if (max_k >= 1) seq.push_back(Polynomial::variable(0));
  const Polynomial u = Polynomial::variable(0);
  for (int k = 1; k < max_k; ++k) {
    Polynomial next = Rational(2 * k + n - 2) * (u * seq[static_cast<std::size_t>(k)]) -
                      Rational(k) * seq[static_cast<std::size_t>(k - 1)];
    next *= Rational(1, k + n - 2);
    seq.push_back(std::move(next));
  }
  for (auto& p : seq) {
    const Rational at_one = p.evaluate<Rational>({Rational(1), Rational(0), Rational(0)});
    if (at_one != 1) p *= Rational(1) / at_one;
  }
  return seq;
}

Polynomial to_variable(const Polynomial& univariate, std::size_t index) {
  Polynomial r;
  for (const auto& [m, c] : univariate.terms()) {
    Monomial moved;
    moved.exponents[index] = static_cast<std::uint16_t>(m[0]);
    r.add_term(moved, c);
  }
  return r;
}

void check_matrix_args(int k, const SdpShape& shape) {
  shape.validate();
  if (k < 0 || k > shape.d) {
    throw std::out_of_range("matrix index k = " + std::to_string(k) + " outside 0.." +
                            std::to_string(shape.d));
  }
}

}  // namespace

Polynomial jacobi_extended(int k, int n) {
  if (n < 2) throw std::invalid_argument("Jacobi parameter n must be at least 2");
  if (k < 0) throw std::invalid_argument("Jacobi degree must be nonnegative");
  return jacobi_sequence(k, n).back();
}

Polynomial jacobi(int k, int n) {
  if (n < 3) throw std::invalid_argument("jacobi: n must be at least 3, got " + std::to_string(n));
  return jacobi_extended(k, n);
}

Polynomial q_kernel(int k, int n) {
  if (n < 3) throw std::invalid_argument("q_kernel: n must be at least 3, got " + std::to_string(n));
  if (k < 0) throw std::invalid_argument("q_kernel: k must be nonnegative");
  const Polynomial p = jacobi_extended(k, n - 1);
  const Polynomial u = Polynomial::variable(0);
  const Polynomial v = Polynomial::variable(1);
  const Polynomial t = Polynomial::variable(2);
  const Polynomial one(Rational(1));
  const Polynomial inner = t - u * v;
  const Polynomial weight = (one - u * u) * (one - v * v);

  Polynomial q;
  for (const auto& [m, c] : p.terms()) {
    const int j = static_cast<int>(m[0]);
    if ((k - j) % 2 != 0) {
      throw std::logic_error("Jacobi polynomial has a term of the wrong parity");
    }
    q += c * (inner.pow(static_cast<unsigned>(j)) * weight.pow(static_cast<unsigned>((k - j) / 2)));
  }
  return q;
}

PolyMatrix y_matrix(int k, const SdpShape& shape) {
  check_matrix_args(k, shape);
  const int size = shape.d - k + 1;
  const auto p = jacobi_sequence(size - 1, shape.n + 2 * k);
  const Polynomial q = q_kernel(k, shape.n);

  std::vector<Polynomial> pu, pv;
  for (const auto& pi : p) {
    pu.push_back(pi * q);
    pv.push_back(to_variable(pi, 1));
  }
  PolyMatrix y(static_cast<std::size_t>(size));
  for (std::size_t i = 0; i < y.dim(); ++i) {
    for (std::size_t j = 0; j < y.dim(); ++j) y.at(i, j) = pu[i] * pv[j];
  }
  return y;
}

PolyMatrix s_matrix(int k, const SdpShape& shape) {
  const PolyMatrix y = y_matrix(k, shape);
  PolyMatrix s(y.dim());
  for (std::size_t i = 0; i < y.dim(); ++i) {
    for (std::size_t j = i; j < y.dim(); ++j) {
      s.at(i, j) = symmetrize(y.at(i, j));
      if (j != i) s.at(j, i) = s.at(i, j);
    }
  }
  return s;
}

}  // namespace kissbound
