#include "vwp/decomp.hpp"

#include <algorithm>

#include "vwp/numeric_core.hpp"
#include "vwp/series.hpp"

namespace vwp {

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// p(u + c): recenter by binomial expansion
Poly poly_compose_shift(const Poly& p, const Rational& c) {
  Poly r(p.size(), Rational(0));
  for (size_t i = 0; i < p.size(); ++i) {
    // p_i (u+c)^i
    Rational binom = 1;
    Rational cpow = 1;
    for (size_t t = 0; t <= i; ++t) {
      // coefficient of u^(i-t): C(i,t) c^t
      r[i - t] += p[i] * binom * cpow;
      binom *= Rational(static_cast<long>(i - t));
      binom /= Rational(static_cast<long>(t + 1));
      cpow *= c;
    }
  }
  return r;
}

// first `order` coefficients of num/den as a power series (den[0] != 0)
Poly series_div(const Poly& num, const Poly& den, size_t order) {
  Poly q(order, Rational(0));
  for (size_t i = 0; i < order; ++i) {
    Rational acc = i < num.size() ? num[i] : Rational(0);
    for (size_t t = 1; t <= i && t < den.size(); ++t) acc -= den[t] * q[i - t];
    q[i] = acc / den[0];
  }
  return q;
}

Rational series_constant(int E, long n, const Rational& prefac) {
  // T(k) = C (3n+2+2k) prod_{j=1..3n+1}(k+j) / prod_{j=n+1..2n+1}(k+j)^{E+2}
  Rational C = prefac;
  Rational ratio(factorial(static_cast<unsigned long>(2 * n + 1)));
  ratio /= Rational(factorial(static_cast<unsigned long>(n)));
  for (int i = 0; i < E + 2; ++i) C *= ratio;
  C /= Rational(3 * n + 2);
  C /= Rational(factorial(static_cast<unsigned long>(3 * n + 1)));
  return C;
}

}  // namespace

Rational PartialFractionTable::evaluate(const Rational& k) const {
  Rational acc = 0;
  for (const auto& [j, coeffs] : entries) {
    Rational base = k + j;
    if (base == 0) throw ZeroDenominator("evaluating at a pole");
    Rational invpow = 1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      invpow /= base;
      acc += coeffs[i] * invpow;
    }
  }
  if (!polynomial_part.empty()) acc += poly_eval(polynomial_part, k);
  return acc;
}

Rational specialized_summand(int E, long n, long k) {
  if (k < 0) throw InvalidParameters("k must be >= 0");
  const Rational prefac = build_vasilyev_series(E, n).first;
  // term_k without the sign: prefac * vwp factor * (3n+2)_k (n+1)_k^{E+2} /
  // (k! (2n+2)_k^{E+2})
  Rational t = prefac;
  t *= Rational(3 * n + 2 + 2 * k);
  t /= Rational(3 * n + 2);
  t *= pochhammer(Rational(3 * n + 2), k);
  Rational top = pochhammer(Rational(n + 1), k);
  Rational bot = pochhammer(Rational(2 * n + 2), k);
  for (int i = 0; i < E + 2; ++i) {
    t *= top;
    t /= bot;
  }
  t /= Rational(factorial(static_cast<unsigned long>(k)));
  return t;
}

PartialFractionTable partial_fraction_decompose(int E, long n) {
  if (E < 2 || E > 6 || n < 0 || n > 3)
    throw InvalidParameters("desk-scale guard: 2 <= E <= 6 and 0 <= n <= 3");

  const Rational prefac = build_vasilyev_series(E, n).first;
  const Rational C = series_constant(E, n, prefac);
  const int ord = E + 2;  // formal pole order at each of j = n+1..2n+1

  // numerator N(k) = C (3n+2+2k) prod_{j=1..3n+1}(k+j)
  Poly N{C * Rational(3 * n + 2), C * 2};
  for (long j = 1; j <= 3 * n + 1; ++j) N = poly_mul(N, Poly{Rational(j), Rational(1)});

  PartialFractionTable table;
  table.E = E;
  table.n = n;

  for (long j = n + 1; j <= 2 * n + 1; ++j) {
    // recenter at k = -j and divide by the co-factor of (k+j)^ord
    Poly Nj = poly_compose_shift(N, Rational(-j));
    Poly Dj{Rational(1)};
    for (long j2 = n + 1; j2 <= 2 * n + 1; ++j2) {
      if (j2 == j) continue;
      Poly lin{Rational(j2 - j), Rational(1)};
      for (int t = 0; t < ord; ++t) Dj = poly_mul(Dj, lin);
    }
    Poly S = series_div(Nj, Dj, static_cast<size_t>(ord));
    // c_{i,j} = coefficient of u^{ord-i}
    std::vector<Rational> coeffs(static_cast<size_t>(ord), Rational(0));
    bool any = false;
    for (int i = 1; i <= ord; ++i) {
      coeffs[static_cast<size_t>(i - 1)] = S[static_cast<size_t>(ord - i)];
      if (coeffs[static_cast<size_t>(i - 1)] != 0) any = true;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (any) table.entries[j] = std::move(coeffs);
  }

  // exact re-evaluation oracle: 20 integer points and a few rational ones
  for (long k = 0; k < 20; ++k) {
    if (table.evaluate(Rational(k)) != specialized_summand(E, n, k))
      throw ReconstructionMismatch("partial fractions disagree with the summand at k = " +
                                   std::to_string(k));
  }
  for (long num = 1; num <= 5; ++num) {
    Rational k(2 * num + 1, 7);
    k.canonicalize();
    Poly D{Rational(1)};
    for (long j = n + 1; j <= 2 * n + 1; ++j) {
      Poly lin{Rational(j), Rational(1)};
      for (int t = 0; t < ord; ++t) D = poly_mul(D, lin);
    }
    Rational direct = poly_eval(N, k) / poly_eval(D, k);
    if (table.evaluate(k) != direct)
      throw ReconstructionMismatch("partial fractions disagree at a rational sample");
  }
  return table;
}

namespace {

Rational harmonic_power(long upto, int i) {
  Rational acc = 0;
  for (long l = 1; l <= upto; ++l) {
    Rational term(1, l);
    term.canonicalize();
    Rational p = 1;
    for (int t = 0; t < i; ++t) p *= term;
    acc += p;
  }
  return acc;
}

Rational alternating_harmonic_power(long upto, int i) {
  Rational acc = 0;
  for (long l = 1; l <= upto; ++l) {
    Rational term(1, l);
    term.canonicalize();
    Rational p = 1;
    for (int t = 0; t < i; ++t) p *= term;
    if (l % 2 == 0) acc -= p; else acc += p;
  }
  return acc;
}

Rational eta_factor(int i) {
  // 1 - 2^{1-i} for i >= 2
  BigInt half_pow;
  mpz_ui_pow_ui(half_pow.get_mpz_t(), 2, static_cast<unsigned long>(i - 1));
  Rational r(half_pow - 1, half_pow);
  r.canonicalize();
  return r;
}

}  // namespace

ZetaDecomposition zeta_decompose(int E, long n) {
  PartialFractionTable table = partial_fraction_decompose(E, n);
  const bool alternating = (E % 2 == 0);  // sign (-1)^{k(E+1)}

  ZetaDecomposition d;
  d.E = E;
  d.n = n;
  d.p0 = 0;

  std::map<int, Rational> raw;  // zeta(i) coefficients before parity filtering
  Rational log_coeff = 0;

  for (const auto& [j, coeffs] : table.entries) {
    const Rational sign = (!alternating || j % 2 == 1) ? Rational(1) : Rational(-1);
    // for sign +1: sum_k (k+j)^{-i} = zeta(i) - H^{(i)}_{j-1}
    // for sign -1: sum_k (-1)^k (k+j)^{-i} = (-1)^{j+1}(eta(i) - A^{(i)}_{j-1})
    for (size_t idx = 0; idx < coeffs.size(); ++idx) {
      const int i = static_cast<int>(idx) + 1;
      const Rational& c = coeffs[idx];
      if (c == 0) continue;
      if (!alternating) {
        if (i == 1) {
          log_coeff += c;
          d.p0 -= c * harmonic_power(j - 1, 1);
        } else {
          raw[i] += c;
          d.p0 -= c * harmonic_power(j - 1, i);
        }
      } else {
        if (i == 1) {
          log_coeff += sign * c;
          d.p0 -= sign * c * alternating_harmonic_power(j - 1, 1);
        } else {
          raw[i] += eta_factor(i) * sign * c;
          d.p0 -= sign * c * alternating_harmonic_power(j - 1, i);
        }
      }
    }
  }

  if (log_coeff != 0)
    throw LogTermSurvives("first-order pole coefficients do not cancel: residual " +
                          to_string(log_coeff));

  for (const auto& [i, coeff] : raw) {
    if (coeff == 0) continue;
    const bool allowed = (i >= 2 && i <= E && (i - E) % 2 == 0);
    if (allowed)
      d.p[i] = coeff;
    else
      d.residual_terms.emplace_back(i, coeff);
  }
  if (!d.residual_terms.empty()) {
    std::string what = "wrong-parity zeta coefficients: ";
    for (const auto& [i, c] : d.residual_terms)
      what += "zeta(" + std::to_string(i) + ")*" + to_string(c) + " ";
    throw ParityViolation(what);
  }
  return d;
}

Real reconstruct_value(const ZetaDecomposition& d, const PrecisionConfig& cfg) {
  Real acc(d.p0, cfg.eval_prec());
  for (const auto& [m, coeff] : d.p) {
    Real term = zeta_int(m, cfg);
    term *= coeff;
    acc += term;
  }
  return acc;
}

IntegralityReport check_integrality(const ZetaDecomposition& d) {
  IntegralityReport rep;
  rep.E = d.E;
  rep.n = d.n;
  rep.d_n = lcm_upto(d.n);

  BigInt factor = 1;
  for (int i = 0; i < d.E; ++i) factor *= rep.d_n;

  auto push = [&](int m, const Rational& coeff) {
    IntegralityEntry e;
    e.m = m;
    e.coeff = coeff;
    Rational scaled = coeff * Rational(factor);
    e.integral = is_integer(scaled);
    e.conjectural = (m == 0 && d.E % 2 == 0);
    rep.all_integral = rep.all_integral && e.integral;
    rep.entries.push_back(e);
  };
  push(0, d.p0);
  for (const auto& [m, coeff] : d.p) push(m, coeff);
  return rep;
}

}  // namespace vwp
