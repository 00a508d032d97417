#include "kissbound/polynomial.hpp"

namespace kissbound {

std::string Monomial::to_string() const {
  if (degree() == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += kVariableNames[i];
    if (exponents[i] > 1) out += '^' + std::to_string(exponents[i]);
  }
  return out;
}

std::vector<Monomial> monomials_up_to(unsigned max_degree, unsigned num_vars) {
  if (num_vars != 1 && num_vars != 3) throw std::invalid_argument("monomials_up_to: 1 or 3 variables");
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    if (num_vars == 1) {
      out.emplace_back(deg, 0, 0);
      continue;
    }
    for (unsigned a = deg + 1; a-- > 0;) {
      for (unsigned b = deg - a + 1; b-- > 0;) out.emplace_back(a, b, deg - a - b);
    }
  }
  return out;
}

RealPolynomial to_real(const Polynomial& p) {
  return p.map_coefficients<Real>([](const Rational& c) { return to_real(c); });
}

std::string coefficient_string(const Rational& c) { return c.get_str(); }
std::string coefficient_string(const Real& c) { return to_decimal(c, 20); }

Polynomial gram_determinant() {
  return Polynomial{{Monomial{0, 0, 0}, Rational(1)},
                    {Monomial{1, 1, 1}, Rational(2)},
                    {Monomial{2, 0, 0}, Rational(-1)},
                    {Monomial{0, 2, 0}, Rational(-1)},
                    {Monomial{0, 0, 2}, Rational(-1)}};
}

Polynomial interval_polynomial(const Rational& cos_theta, std::size_t variable) {
  const Polynomial x = Polynomial::variable(variable);
  return (x + Polynomial(Rational(1))) * (Polynomial(cos_theta) - x);
}

}  // namespace kissbound
