#include "vwp/series.hpp"

#include <algorithm>

#include "vwp/numeric_core.hpp"

namespace vwp {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

void SeriesSpec::validate() const {
  if (alphas.size() != betas.size() + 1)
    throw InvalidParameters("series needs p+1 numerator and p denominator parameters");
  if (abs_q(z) > 1) throw InvalidParameters("series argument must satisfy |z| <= 1");
  for (const auto& b : betas)
    if (is_nonpositive_integer(b))
      throw InvalidParameters("denominator parameter " + to_string(b) +
                              " is a non-positive integer");
}

SeriesClass classify_series(const SeriesSpec& spec) {
  spec.validate();
  SeriesClass cls;

  for (const auto& a : spec.alphas)
    if (is_nonpositive_integer(a)) cls.terminating = true;

  Rational sum_a = 0, sum_b = 0;
  for (const auto& a : spec.alphas) sum_a += a;
  for (const auto& b : spec.betas) sum_b += b;
  cls.balanced = (sum_a + 1 == sum_b);

  // alpha_0 + 1 = alpha_j + beta_j for all j, and alpha_1 = alpha_0/2 + 1
  bool vwp_flag = spec.p() >= 1;
  if (vwp_flag) {
    const Rational& a0 = spec.alphas[0];
    for (size_t j = 1; j < spec.alphas.size() && vwp_flag; ++j)
      if (spec.alphas[j] + spec.betas[j - 1] != a0 + 1) vwp_flag = false;
    if (vwp_flag && spec.alphas.size() >= 2 && spec.alphas[1] != a0 / 2 + 1) vwp_flag = false;
  }
  cls.very_well_poised = vwp_flag;

  Rational margin = sum_b - sum_a;
  bool unit_circle = (abs_q(spec.z) == 1);
  bool conv = !unit_circle || cls.terminating || margin > 0;
  cls.convergent.add(
      "series_convergence", conv,
      unit_circle ? "|z|=1, sum(beta)-sum(alpha) = " + to_string(margin) +
                        (cls.terminating ? " (terminating)" : " (need > 0 unless terminating)")
                  : "|z| < 1");
  return cls;
}

PfqResult eval_pfq(const SeriesSpec& spec, const PrecisionConfig& cfg) {
  cfg.validate();
  SeriesClass cls = classify_series(spec);
  if (!cls.convergent.pass)
    throw NotConvergent("series does not converge: " + cls.convergent.checks.front().detail);

  const mpfr_prec_t P = static_cast<mpfr_prec_t>(cfg.working_bits + 320);

  // terminating series: finite loop, zero tail
  if (cls.terminating) {
    long N = -1;
    for (const auto& a : spec.alphas)
      if (is_nonpositive_integer(a)) {
        long cand = -to_long(a);
        if (N < 0 || cand < N) N = cand;
      }
    Real S(0L, P), t(1L, P);
    long k = 0;
    for (; k <= N; ++k) {
      S += t;
      for (const auto& a : spec.alphas) t *= Rational(a + k);
      for (const auto& b : spec.betas) t /= Rational(b + k);
      t /= (k + 1);
      t *= spec.z;
    }
    PfqResult res{S, Real(0L, P), k, SumMethod::terminated};
    return res;
  }

  // incremental term stream: t_{k+1} = t_k * z * prod(alpha+k) / ((k+1) prod(beta+k))
  Real t(1L, P);
  auto term = [&](long k) -> Real {
    Real cur = t;
    for (const auto& a : spec.alphas) t *= Rational(a + k);
    for (const auto& b : spec.betas) t /= Rational(b + k);
    t /= (k + 1);
    t *= spec.z;
    return cur;
  };

  if (abs_q(spec.z) < 1) {
    double az = std::abs(Real(spec.z, 64).to_double());
    SumOutcome out = sum_geometric_series(term, az, cfg.target_abs_tol, P, cfg.max_terms);
    return {out.value, out.error_estimate, out.terms_used, out.method};
  }

  // |z| = 1: power-law tails, exponent = sum(beta) - sum(alpha)
  Rational margin = 0;
  for (const auto& b : spec.betas) margin += b;
  for (const auto& a : spec.alphas) margin -= a;

  TailSumOptions opt;
  opt.tol = cfg.target_abs_tol;
  opt.prec = P;
  opt.max_terms = cfg.max_terms;
  opt.alternating = (spec.z == -1);
  opt.theta = Real(margin, P);
  SumOutcome out = sum_power_tail_series(term, opt);
  return {out.value, out.error_estimate, out.terms_used, out.method};
}

Rational eval_pfq_exact_terminating(const SeriesSpec& spec) {
  spec.validate();
  long N = -1;
  for (const auto& a : spec.alphas) {
    if (is_nonpositive_integer(a)) {
      long cand = -to_long(a);
      if (N < 0 || cand < N) N = cand;
    }
  }
  if (N < 0)
    throw InvalidParameters("eval_pfq_exact_terminating requires a non-positive-integer alpha");

  Rational S = 0, t = 1;
  for (long k = 0; k <= N; ++k) {
    S += t;
    if (k == N) break;
    for (const auto& a : spec.alphas) t *= (a + k);
    for (const auto& b : spec.betas) {
      Rational f = b + k;
      if (f == 0)
        throw ZeroDenominator("denominator Pochhammer (" + to_string(b) + ")_k vanishes at k = " +
                              std::to_string(k + 1));
      t /= f;
    }
    t /= (k + 1);
    t *= spec.z;
  }
  return S;
}

Real GammaProduct::eval(const PrecisionConfig& cfg) const {
  Real acc(1L, cfg.eval_prec());
  for (const auto& q : numerator_args) acc *= gamma(q, cfg);
  for (const auto& q : denominator_args) acc /= gamma(q, cfg);
  return acc;
}

std::optional<Rational> GammaProduct::exact_value() const {
  Rational acc = 1;
  for (const auto& q : numerator_args) {
    if (!is_integer(q) || q <= 0) return std::nullopt;
    acc *= Rational(factorial(static_cast<unsigned long>(to_long(q)) - 1));
  }
  for (const auto& q : denominator_args) {
    if (!is_integer(q) || q <= 0) return std::nullopt;
    acc /= Rational(factorial(static_cast<unsigned long>(to_long(q)) - 1));
  }
  return acc;
}

int vector_h_size(int m) { return m + 3; }

std::pair<GammaProduct, SeriesSpec> build_zudilin_rhs_series(int m,
                                                             const std::vector<Rational>& h) {
  if (m < 1) throw InvalidParameters("m must be >= 1");
  if (static_cast<int>(h.size()) != vector_h_size(m))
    throw InvalidParameters("h must have m+3 entries h_0..h_{m+2}");
  const Rational& h0 = h[0];
  if (is_nonpositive_integer(Rational(h0 / 2)))
    throw InvalidParameters("h_0/2 must not be a non-positive integer");
  for (int j = 1; j <= m + 2; ++j)
    if (is_nonpositive_integer(Rational(1 + h0 - h[static_cast<size_t>(j)])))
      throw InvalidParameters("1+h_0-h_" + std::to_string(j) +
                              " is a non-positive integer");

  SeriesSpec spec;
  spec.alphas.push_back(h0);
  spec.alphas.push_back(h0 / 2 + 1);
  for (int j = 1; j <= m + 2; ++j) spec.alphas.push_back(h[static_cast<size_t>(j)]);
  spec.betas.push_back(h0 / 2);
  for (int j = 1; j <= m + 2; ++j) spec.betas.push_back(1 + h0 - h[static_cast<size_t>(j)]);
  spec.z = (m % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^(m+1)

  GammaProduct pre;
  pre.numerator_args.push_back(1 + h0);
  for (int j = 2; j <= m + 1; ++j) pre.numerator_args.push_back(h[static_cast<size_t>(j)]);
  for (int j = 1; j <= m + 1; ++j)
    pre.numerator_args.push_back(1 + h0 - h[static_cast<size_t>(j)] -
                                 h[static_cast<size_t>(j + 1)]);
  for (int j = 1; j <= m + 2; ++j)
    pre.denominator_args.push_back(1 + h0 - h[static_cast<size_t>(j)]);
  return {pre, spec};
}

std::pair<Rational, SeriesSpec> build_vasilyev_series(int E, long n) {
  if (E < 2) throw InvalidParameters("E must be >= 2");
  if (n < 0) throw InvalidParameters("n must be >= 0");

  Rational pre = 1;
  BigInt nf = factorial(static_cast<unsigned long>(n));
  BigInt top = factorial(static_cast<unsigned long>(3 * n + 2));
  BigInt bot = factorial(static_cast<unsigned long>(2 * n + 1));
  for (int i = 0; i < 2 * E + 1; ++i) pre *= Rational(nf);
  pre *= Rational(top);
  for (int i = 0; i < E + 2; ++i) pre /= Rational(bot);

  Rational three_n_half(3 * n, 2);
  three_n_half.canonicalize();

  SeriesSpec spec;
  spec.alphas.push_back(Rational(3 * n + 2));
  spec.alphas.push_back(three_n_half + 2);
  for (int i = 0; i < E + 2; ++i) spec.alphas.push_back(Rational(n + 1));
  spec.betas.push_back(three_n_half + 1);
  for (int i = 0; i < E + 2; ++i) spec.betas.push_back(Rational(2 * n + 2));
  spec.z = (E % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^(E+1)
  return {pre, spec};
}

}  // namespace vwp
