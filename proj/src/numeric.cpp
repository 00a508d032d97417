#include "kissbound/numeric.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace kissbound {

unsigned bits_to_digits10(unsigned bits) {
  // mpfr_float rounds digits10 back up to bits; keep the inverse tight.
  return static_cast<unsigned>(std::floor(bits * 0.30102999566398120)) + 1;
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Rational to_rational(const Real& x) {
  mpfr_srcptr src = x.backend().data();
  if (!mpfr_number_p(src)) throw std::domain_error("to_rational: non-finite value");
  if (mpfr_zero_p(src)) return Rational(0);
  mpz_class mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), src);
  Rational q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

Real at_working_precision(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

namespace {

const std::regex& fraction_pattern() {
  static const std::regex re(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  return re;
}

const std::regex& decimal_pattern() {
  static const std::regex re(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  return re;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, fraction_pattern())) {
    mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    mpz_class den(m[2].str(), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, decimal_pattern())) {
    const std::string whole = m[2].str();
    const std::string frac = m[3].matched ? m[3].str() : std::string();
    if (whole.empty() && frac.empty()) throw std::invalid_argument("not a rational: '" + s + "'");
    long exp10 = 0;
    if (m[4].matched) exp10 = std::stol(m[4].str());
    exp10 -= static_cast<long>(frac.size());
    mpz_class digits(whole + frac, 10);
    Rational q(digits);
    if (exp10 >= 0) {
      q *= pow10(static_cast<unsigned long>(exp10));
    } else {
      q /= pow10(static_cast<unsigned long>(-exp10));
    }
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw std::invalid_argument("not a rational: '" + s + "'");
}

Real parse_real(std::string_view text) {
  Real r;
  const std::string s(text);
  if (mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

std::string format_scientific(bool negative, const std::string& digits, long exp10) {
  std::string out;
  if (negative) out += '-';
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  out += 'e';
  out += exp10 < 0 ? '-' : '+';
  const long a = exp10 < 0 ? -exp10 : exp10;
  if (a < 10) out += '0';
  out += std::to_string(a);
  return out;
}

// floor(log10 |q|) for q != 0.
long floor_log10(const Rational& aq) {
  long e = static_cast<long>(std::floor(std::log10(std::abs(aq.get_d()))));
  if (!std::isfinite(aq.get_d()) || aq.get_d() == 0.0) {
    // Outside double range: fall back to digit counts.
    e = static_cast<long>(mpz_sizeinbase(aq.get_num_mpz_t(), 10)) -
        static_cast<long>(mpz_sizeinbase(aq.get_den_mpz_t(), 10));
  }
  auto scaled = [](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                  : Rational(mpz_class(1), pow10(static_cast<unsigned long>(-k)));
  };
  while (scaled(e) > aq) --e;
  while (scaled(e + 1) <= aq) ++e;
  return e;
}

}  // namespace

std::string to_decimal(const Rational& q, int digits, bool round_up) {
  if (digits < 1) throw std::invalid_argument("to_decimal: digits must be positive");
  if (q == 0) return "0";
  const Rational aq = abs(q);
  long e = floor_log10(aq);
  auto round_at = [&](long exp10) {
    const long shift = digits - 1 - exp10;
    Rational scaled = aq;
    if (shift >= 0) {
      scaled *= pow10(static_cast<unsigned long>(shift));
    } else {
      scaled /= pow10(static_cast<unsigned long>(-shift));
    }
    mpz_class n;
    if (round_up) {
      // Magnitude rounded up for positives, truncated for negatives.
      if (q > 0) {
        mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      } else {
        mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      }
      return n;
    }
    n = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
    return n;
  };
  mpz_class n = round_at(e);
  if (n >= pow10(static_cast<unsigned long>(digits))) {
    ++e;
    n = round_at(e);
  }
  return format_scientific(q < 0, n.get_str(), e);
}

std::string to_decimal(const Real& x, int digits) {
  mpfr_srcptr src = x.backend().data();
  if (mpfr_nan_p(src)) return "nan";
  if (mpfr_inf_p(src)) return mpfr_signbit(src) ? "-inf" : "inf";
  if (mpfr_zero_p(src)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), src, MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  return format_scientific(negative, s, static_cast<long>(exp10) - 1);
}

std::string to_fixed(const Rational& q, int decimals, bool round_up) {
  const Rational scaled = q * Rational(pow10(static_cast<unsigned long>(decimals)));
  mpz_class n;
  if (round_up) {
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  } else {
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  }
  const bool negative = n < 0;
  std::string s = mpz_class(abs(n)).get_str();
  if (decimals > 0) {
    if (s.size() <= static_cast<size_t>(decimals)) {
      s.insert(0, static_cast<size_t>(decimals) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<size_t>(decimals), 1, '.');
  }
  return negative ? "-" + s : s;
}

Rational ulp(const Rational& x, unsigned bits) {
  if (x == 0) throw std::invalid_argument("ulp of zero");
  const Rational ax = abs(x);
  long e = static_cast<long>(mpz_sizeinbase(ax.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(ax.get_den_mpz_t(), 2));
  auto pow2 = [](long k) {
    Rational r(1);
    if (k >= 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    } else {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
  };
  while (pow2(e) > ax) --e;
  while (pow2(e + 1) <= ax) ++e;
  return pow2(e - static_cast<long>(bits) + 1);
}

}  // namespace kissbound
