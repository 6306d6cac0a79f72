#include "vwp/numeric_core.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

namespace vwp {

void PrecisionConfig::validate() const {
  if (working_bits < 64) throw InvalidParameters("working_bits must be >= 64");
  if (!(target_abs_tol > 0)) throw InvalidParameters("target_abs_tol must be > 0");
  if (max_terms < 1) throw InvalidParameters("max_terms must be >= 1");
  if (simplex_cap < 1) throw InvalidParameters("simplex_cap must be >= 1");
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InvalidParameters("empty rational literal");

  auto fail = [&] { throw InvalidParameters("cannot parse rational literal '" + text + "'"); };

  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail();
    if (q.get_den() == 0) throw ZeroDenominator("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }

  // decimal literal, optional exponent: [-]ddd[.ddd][e[+-]dd]
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    i = 1;
  }
  std::string digits;
  long frac_digits = 0;
  long exponent = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      if (!seen_digit || i + 1 >= s.size()) fail();
      try {
        exponent = std::stol(s.substr(i + 1));
      } catch (...) {
        fail();
      }
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();

  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  mpz_class den = 1;
  long net = exponent - frac_digits;
  mpz_class ten = 10;
  if (net >= 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(net));
    num *= scale;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-net));
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_nonpositive_integer(const Rational& q) { return is_integer(q) && q.get_num() <= 0; }

long to_long(const Rational& q) { return static_cast<long>(q.get_num().get_si()); }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial_int(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw InvalidParameters("empty rational list '" + csv + "'");
  return out;
}

std::string to_decimal_string(const Real& x, int significant_digits) {
  if (significant_digits < 2) significant_digits = 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, x.raw());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Rational pochhammer(const Rational& x, long ell) {
  if (ell < 0) throw InvalidParameters("pochhammer requires ell >= 0");
  Rational acc = 1;
  Rational cur = x;
  for (long i = 0; i < ell; ++i) {
    acc *= cur;
    cur += 1;
  }
  return acc;
}

Real pochhammer(const Real& x, long ell) {
  if (ell < 0) throw InvalidParameters("pochhammer requires ell >= 0");
  Real acc(1L, x.prec());
  Real cur(x);
  for (long i = 0; i < ell; ++i) {
    acc *= cur;
    cur += 1;
  }
  return acc;
}

Real gamma(const Real& x, const PrecisionConfig& cfg) {
  if (!(x.sign() > 0)) throw NonPositiveArgument("gamma requires a positive argument");
  Real r(cfg.eval_prec());
  Real xw(cfg.eval_prec());
  mpfr_set(xw.raw(), x.raw(), MPFR_RNDN);
  mpfr_gamma(r.raw(), xw.raw(), MPFR_RNDN);
  return r;
}

Real gamma(const Rational& x, const PrecisionConfig& cfg) {
  if (!(x > 0)) throw NonPositiveArgument("gamma requires a positive argument");
  return gamma(Real(x, cfg.eval_prec()), cfg);
}

Real gamma_ratio(const Real& alpha, const Real& beta, long k, const PrecisionConfig& cfg) {
  Real ak = alpha + Real(k, alpha.prec());
  Real bk = beta + Real(k, beta.prec());
  if (!(ak.sign() > 0) || !(bk.sign() > 0))
    throw NonPositiveArgument("gamma_ratio requires alpha+k > 0 and beta+k > 0");
  Real diff = alpha - beta;
  if (mpfr_integer_p(diff.raw())) {
    long d = mpfr_get_si(diff.raw(), MPFR_RNDN);
    // Gamma(beta+k+d)/Gamma(beta+k) = (beta+k)_d, a finite product
    if (d >= 0) return pochhammer(Real(bk), d);
    Real denom = pochhammer(Real(ak), -d);
    Real one(1L, cfg.eval_prec());
    return one / denom;
  }
  return gamma(ak, cfg) / gamma(bk, cfg);
}

Real zeta_int(long m, const PrecisionConfig& cfg) {
  if (m < 2) throw InvalidOrder("zeta_int requires m >= 2");
  Real r(cfg.eval_prec());
  mpfr_zeta_ui(r.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
  return r;
}

BigInt lcm_upto(long n) {
  if (n <= 1) return BigInt(1);
  // sieve primes <= n, multiply the largest power of each prime <= n
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  BigInt acc = 1;
  for (long p = 2; p <= n; ++p) {
    if (composite[static_cast<size_t>(p)]) continue;
    for (long q = 2 * p; q <= n; q += p) composite[static_cast<size_t>(q)] = true;
    long pk = p;
    while (pk <= n / p) pk *= p;
    acc *= pk;
  }
  return acc;
}

}  // namespace vwp
