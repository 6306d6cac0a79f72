#include "vwp/harness.hpp"

#include <chrono>
#include <cmath>

#include "vwp/numeric_core.hpp"

namespace vwp {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Real tol_real(double tol, const PrecisionConfig& cfg) {
  return Real(tol, cfg.eval_prec());
}

}  // namespace

void ParameterVectorH::validate_shape() const {
  if (m < 1) throw InvalidParameters("m must be >= 1");
  if (h.size() != static_cast<size_t>(m) + 3)
    throw InvalidParameters("h must have m+3 entries h_0..h_{m+2}");
}

ConvergenceVerdict check_h_conditions(const ParameterVectorH& hv) {
  hv.validate_shape();
  const auto& h = hv.h;
  const int m = hv.m;
  ConvergenceVerdict v;

  Rational sum_h = 0;
  for (int j = 1; j <= m + 2; ++j) sum_h += h[static_cast<size_t>(j)];
  // (m+1)(1+h_0) > 2 sum h_j, cleared of the denominator
  Rational lhs = Rational(m + 1) * (1 + h[0]) - 2 * sum_h;
  v.add("growth", lhs > 0,
        "(m+1)(1+h_0)-2*sum(h_1..h_{m+2}) = " + to_string(lhs) + " (need > 0)");

  for (int j = 2; j <= m + 1; ++j) {
    Rational upper = 1 + h[0] - h[static_cast<size_t>(j + 1)];
    v.add("sandwich[j=" + std::to_string(j) + "]",
          upper > h[static_cast<size_t>(j)] && h[static_cast<size_t>(j)] > 0,
          "need 1+h_0-h_" + std::to_string(j + 1) + " > h_" + std::to_string(j) + " > 0, have " +
              to_string(upper) + " vs " + to_string(h[static_cast<size_t>(j)]));
  }
  v.add("h1>0", h[1] > 0, "h_1 = " + to_string(h[1]));
  Rational margin = 1 + h[0] - h[3] - h[2] - h[1];
  v.add("z1_margin", margin >= 0,
        "1+h_0-h_3-h_2-h_1 = " + to_string(margin) + " (need >= 0)");
  return v;
}

JmParams map_h_to_jm(const ParameterVectorH& hv) {
  hv.validate_shape();
  JmParams p;
  p.m = hv.m;
  p.z = 1;
  for (int j = 1; j <= hv.m + 1; ++j) p.a.push_back(hv.h[static_cast<size_t>(j)]);
  for (int j = 1; j <= hv.m; ++j)
    p.b.push_back(1 + hv.h[0] - hv.h[static_cast<size_t>(j + 2)]);
  ConvergenceVerdict v = check_jm_conditions(p);
  if (!v.pass) {
    std::string which;
    for (const auto& f : v.failing()) which += (which.empty() ? "" : ", ") + f;
    throw ConditionViolated("mapped integral parameters inadmissible: " + which);
  }
  return p;
}

VerificationReport check_andrews(int s, long N, const Rational& a,
                                 const std::vector<Rational>& b,
                                 const std::vector<Rational>& c) {
  if (s < 1) throw InvalidParameters("s must be >= 1");
  if (N < 0) throw InvalidParameters("N must be >= 0");
  if (b.size() != static_cast<size_t>(s) + 1 || c.size() != static_cast<size_t>(s) + 1)
    throw InvalidParameters("b and c must have s+1 entries");

  double t0 = now_ms();
  VerificationReport rep;
  rep.identity = "andrews";
  rep.exact = true;

  // opening conditions: none of 1+a-b_j, 1+a-c_j, 1+a+N non-positive integers
  for (size_t j = 0; j < b.size(); ++j) {
    if (is_nonpositive_integer(Rational(1 + a - b[j])) ||
        is_nonpositive_integer(Rational(1 + a - c[j])))
      throw InvalidParameters("1+a-b_j or 1+a-c_j is a non-positive integer");
  }
  if (is_nonpositive_integer(Rational(1 + a + N)))
    throw InvalidParameters("1+a+N is a non-positive integer");

  SeriesSpec lhs_spec;
  lhs_spec.alphas.push_back(a);
  lhs_spec.alphas.push_back(a / 2 + 1);
  for (size_t j = 0; j < b.size(); ++j) {
    lhs_spec.alphas.push_back(b[j]);
    lhs_spec.alphas.push_back(c[j]);
  }
  lhs_spec.alphas.push_back(Rational(-N));
  lhs_spec.betas.push_back(a / 2);
  for (size_t j = 0; j < b.size(); ++j) {
    lhs_spec.betas.push_back(1 + a - b[j]);
    lhs_spec.betas.push_back(1 + a - c[j]);
  }
  lhs_spec.betas.push_back(1 + a + N);
  lhs_spec.z = 1;

  Rational lhs = eval_pfq_exact_terminating(lhs_spec);
  Rational rhs = eval_andrews_rhs_exact(N, a, b, c);

  rep.lhs_exact = lhs;
  rep.rhs_exact = rhs;
  PrecisionConfig disp;
  rep.lhs = Real(lhs, disp.eval_prec());
  rep.rhs = Real(rhs, disp.eval_prec());
  rep.abs_diff = abs(rep.lhs - rep.rhs);
  rep.passed = (lhs == rhs);
  rep.wall_ms = now_ms() - t0;
  return rep;
}

VerificationReport check_whipple(long N, const Rational& a, const Rational& b,
                                 const Rational& c, const Rational& e, const Rational& f) {
  if (N < 0) throw InvalidParameters("N must be >= 0");
  double t0 = now_ms();
  VerificationReport rep;
  rep.identity = "whipple";
  rep.exact = true;

  // balanced 4F3 side
  SeriesSpec lhs_spec;
  lhs_spec.alphas = {a, b, c, Rational(-N)};
  lhs_spec.betas = {e, f, 1 + a + b + c - e - f - N};
  lhs_spec.z = 1;

  // very-well-poised 7F6 side with alpha_0 = e+f-a-1
  Rational W = e + f - a - 1;
  SeriesSpec rhs_spec;
  rhs_spec.alphas = {W, W / 2 + 1, f - a, e - a, b, c, Rational(-N)};
  rhs_spec.betas = {W / 2, e, f, e + f - a - b, e + f - a - c, e + f - a + N};
  rhs_spec.z = 1;

  Rational den1 = pochhammer(e + f - a, N), den2 = pochhammer(e + f - a - b - c, N);
  if (den1 == 0 || den2 == 0) throw ZeroDenominator("transformation prefactor vanishes");
  Rational pre = pochhammer(e + f - a - b, N) * pochhammer(e + f - a - c, N) / (den1 * den2);

  Rational lhs = eval_pfq_exact_terminating(lhs_spec);
  Rational rhs = pre * eval_pfq_exact_terminating(rhs_spec);

  rep.lhs_exact = lhs;
  rep.rhs_exact = rhs;
  PrecisionConfig disp;
  rep.lhs = Real(lhs, disp.eval_prec());
  rep.rhs = Real(rhs, disp.eval_prec());
  rep.abs_diff = abs(rep.lhs - rep.rhs);
  rep.passed = (lhs == rhs);
  rep.wall_ms = now_ms() - t0;
  return rep;
}

VerificationReport check_prop2(Prop2Part part, const Prop2Params& pp,
                               const PrecisionConfig& cfg) {
  cfg.validate();
  pp.validate(part);
  double t0 = now_ms();

  ConvergenceVerdict v = check_prop2_conditions(part, pp);
  if (!v.pass) {
    std::string which;
    for (const auto& fl : v.failing()) which += (which.empty() ? "" : ", ") + fl;
    throw ConditionViolated("hypothesis violated: " + which);
  }

  VerificationReport rep;
  rep.identity = (part == Prop2Part::even) ? "prop2-even" : "prop2-odd";
  rep.conditions = v.checks;
  rep.tolerance = cfg.target_abs_tol;

  PrecisionConfig side_cfg = cfg;
  side_cfg.target_abs_tol = cfg.target_abs_tol / 4.0;

  SeriesSpec lhs_spec;
  lhs_spec.alphas.push_back(pp.a);
  lhs_spec.alphas.push_back(pp.a / 2 + 1);
  if (part == Prop2Part::odd) lhs_spec.alphas.push_back(*pp.c0);
  for (size_t j = 0; j < pp.b.size(); ++j) {
    lhs_spec.alphas.push_back(pp.b[j]);
    lhs_spec.alphas.push_back(pp.c[j]);
  }
  lhs_spec.betas.push_back(pp.a / 2);
  if (part == Prop2Part::odd) lhs_spec.betas.push_back(1 + pp.a - *pp.c0);
  for (size_t j = 0; j < pp.b.size(); ++j) {
    lhs_spec.betas.push_back(1 + pp.a - pp.b[j]);
    lhs_spec.betas.push_back(1 + pp.a - pp.c[j]);
  }
  lhs_spec.z = (part == Prop2Part::even) ? Rational(-1) : Rational(1);

  PfqResult lhs = eval_pfq(lhs_spec, side_cfg);

  GammaProduct pre;
  pre.numerator_args = {1 + pp.a - pp.b.back(), 1 + pp.a - pp.c.back()};
  pre.denominator_args = {1 + pp.a, 1 + pp.a - pp.b.back() - pp.c.back()};

  MultisumResult sum = (part == Prop2Part::even)
                           ? eval_feven_rhs(pp.a, pp.b, pp.c, side_cfg)
                           : eval_fodd_rhs(pp.a, *pp.c0, pp.b, pp.c, side_cfg);
  Real rhs = pre.eval(side_cfg) * sum.value;

  rep.lhs = lhs.value;
  rep.rhs = rhs;
  rep.abs_diff = abs(rep.lhs - rep.rhs);
  rep.passed = rep.abs_diff <= tol_real(cfg.target_abs_tol, cfg);
  rep.terms_used = {lhs.terms_used, sum.terms_used};
  rep.wall_ms = now_ms() - t0;
  return rep;
}

VerificationReport check_zudilin(const ParameterVectorH& h, const PrecisionConfig& cfg,
                                 JmMethod lhs_method) {
  cfg.validate();
  double t0 = now_ms();

  ConvergenceVerdict hv = check_h_conditions(h);
  if (!hv.pass) {
    std::string which;
    for (const auto& fl : hv.failing()) which += (which.empty() ? "" : ", ") + fl;
    throw ConditionViolated("hypothesis violated: " + which);
  }
  JmParams p = map_h_to_jm(h);

  VerificationReport rep;
  rep.identity = "zudilin";
  rep.conditions = hv.checks;
  rep.tolerance = cfg.target_abs_tol;

  PrecisionConfig side_cfg = cfg;
  side_cfg.target_abs_tol = cfg.target_abs_tol / 4.0;

  long lhs_terms = 0;
  Real lhs(cfg.eval_prec());
  switch (lhs_method) {
    case JmMethod::recursive: {
      RecursiveResult r = eval_jm_recursive(p, side_cfg);
      lhs = r.value;
      lhs_terms = r.terms_used;
      break;
    }
    case JmMethod::multisum: {
      MultisumResult r = eval_zlobin_multisum(p, side_cfg);
      lhs = r.value;
      lhs_terms = r.terms_used;
      break;
    }
    case JmMethod::quadrature: {
      QuadratureResult r = eval_jm_quadrature(p);
      lhs = Real(r.value, cfg.eval_prec());
      break;
    }
  }

  auto [pre, spec] = build_zudilin_rhs_series(h.m, h.h);
  PfqResult series = eval_pfq(spec, side_cfg);
  Real rhs = pre.eval(side_cfg) * series.value;

  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.abs_diff = abs(lhs - rhs);
  rep.passed = rep.abs_diff <= tol_real(cfg.target_abs_tol, cfg);
  rep.terms_used = {lhs_terms, series.terms_used};
  rep.wall_ms = now_ms() - t0;
  return rep;
}

ParameterVectorH vasilyev_h(int E, long n) {
  ParameterVectorH hv;
  hv.m = E;
  hv.h.push_back(Rational(3 * n + 2));
  for (int j = 1; j <= E + 2; ++j) hv.h.push_back(Rational(n + 1));
  return hv;
}

JmParams vasilyev_jm(int E, long n) {
  JmParams p;
  p.m = E;
  p.z = 1;
  for (int i = 0; i <= E; ++i) p.a.push_back(Rational(n + 1));
  for (int i = 1; i <= E; ++i) p.b.push_back(Rational(2 * n + 2));
  return p;
}

VerificationReport check_vasilyev(int E, long n, const PrecisionConfig& cfg) {
  cfg.validate();
  if (E < 2 || E > 6 || n < 0 || n > 3)
    throw InvalidParameters("desk-scale guard: 2 <= E <= 6 and 0 <= n <= 3");
  double t0 = now_ms();

  JmParams p = vasilyev_jm(E, n);
  ConvergenceVerdict v = check_jm_conditions(p);

  VerificationReport rep;
  rep.identity = "vasilyev";
  rep.conditions = v.checks;
  rep.tolerance = cfg.target_abs_tol;

  PrecisionConfig side_cfg = cfg;
  side_cfg.target_abs_tol = cfg.target_abs_tol / 4.0;

  RecursiveResult lhs = eval_jm_recursive(p, side_cfg);
  auto [pre, spec] = build_vasilyev_series(E, n);
  PfqResult series = eval_pfq(spec, side_cfg);
  Real rhs = series.value;
  rhs *= pre;

  rep.lhs = lhs.value;
  rep.rhs = rhs;
  rep.abs_diff = abs(rep.lhs - rep.rhs);
  rep.passed = rep.abs_diff <= tol_real(cfg.target_abs_tol, cfg);
  rep.terms_used = {lhs.terms_used, series.terms_used};
  rep.wall_ms = now_ms() - t0;
  return rep;
}

// ---- case generation -------------------------------------------------------

uint64_t CaseRng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long CaseRng::below(long n) {
  if (n <= 0) throw InvalidParameters("below(n) needs n > 0");
  uint64_t bound = static_cast<uint64_t>(n);
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<long>(x % bound);
}

long CaseRng::in_range(long lo, long hi) { return lo + below(hi - lo + 1); }

Rational CaseRng::rational(long num_lo, long num_hi, long den_hi) {
  Rational q(in_range(num_lo, num_hi), in_range(1, den_hi));
  q.canonicalize();
  return q;
}

namespace {

bool andrews_case_ok(const AndrewsCase& cs) {
  const Rational& a = cs.a;
  if (is_nonpositive_integer(Rational(a / 2))) return false;
  if (is_nonpositive_integer(Rational(1 + a + cs.N))) return false;
  for (size_t j = 0; j < cs.b.size(); ++j) {
    if (is_nonpositive_integer(Rational(1 + a - cs.b[j]))) return false;
    if (is_nonpositive_integer(Rational(1 + a - cs.c[j]))) return false;
  }
  // (b_{s+1}+c_{s+1}-a-N)_K must not vanish for K <= N
  Rational lead = cs.b.back() + cs.c.back() - a - cs.N;
  if (is_integer(lead)) {
    long v = to_long(lead);
    if (v <= 0 && v > -cs.N) return false;
    if (v == 0 && cs.N >= 1) return false;
  }
  return true;
}

}  // namespace

AndrewsCase random_andrews_case(CaseRng& rng, int s, long max_N) {
  for (;;) {
    AndrewsCase cs;
    cs.s = s;
    cs.N = rng.in_range(0, max_N);
    cs.a = rng.rational(-9, 9, 9);
    for (int j = 0; j <= s; ++j) {
      cs.b.push_back(rng.rational(-9, 9, 9));
      cs.c.push_back(rng.rational(-9, 9, 9));
    }
    if (andrews_case_ok(cs)) return cs;
  }
}

WhippleCase random_whipple_case(CaseRng& rng, long max_N) {
  for (;;) {
    WhippleCase cs;
    cs.N = rng.in_range(0, max_N);
    cs.a = rng.rational(-9, 9, 9);
    cs.b = rng.rational(-9, 9, 9);
    cs.c = rng.rational(-9, 9, 9);
    cs.e = rng.rational(-9, 9, 9);
    cs.f = rng.rational(-9, 9, 9);

    auto poch_ok = [&](const Rational& x) {
      // (x)_K nonzero for K <= N and x acceptable as a series denominator
      if (!is_integer(x)) return true;
      long v = to_long(x);
      return v > 0 || v <= -cs.N - 1;
    };
    const Rational W = cs.e + cs.f - cs.a - 1;
    bool ok = true;
    // 4F3 denominators over the finite support
    const std::vector<Rational> lhs_dens = {
        cs.e, cs.f, Rational(1 + cs.a + cs.b + cs.c - cs.e - cs.f - cs.N)};
    for (const Rational& q : lhs_dens) ok = ok && poch_ok(q);
    // 7F6 denominators
    const std::vector<Rational> rhs_dens = {
        Rational(W / 2),
        cs.e,
        cs.f,
        Rational(cs.e + cs.f - cs.a - cs.b),
        Rational(cs.e + cs.f - cs.a - cs.c),
        Rational(cs.e + cs.f - cs.a + cs.N)};
    for (const Rational& q : rhs_dens) ok = ok && poch_ok(q);
    // prefactor denominators must be nonzero
    ok = ok && pochhammer(cs.e + cs.f - cs.a, cs.N) != 0 &&
         pochhammer(cs.e + cs.f - cs.a - cs.b - cs.c, cs.N) != 0;
    if (ok) return cs;
  }
}

Prop2Params random_prop2_case(CaseRng& rng, Prop2Part part, int s) {
  // strong hypothesis margins keep every series in the fast direct regime
  auto small_positive = [&rng]() {
    Rational q(rng.in_range(1, 6), rng.in_range(4, 8));
    q.canonicalize();
    return q;  // in [1/8, 3/2]
  };
  for (;;) {
    Prop2Params pp;
    pp.a = Rational(rng.in_range(9, 14)) + rng.rational(0, 8, 9);
    int pairs = (part == Prop2Part::even) ? s + 1 : s;
    if (part == Prop2Part::odd) pp.c0 = small_positive();
    for (int j = 0; j < pairs; ++j) {
      pp.b.push_back(small_positive());
      pp.c.push_back(small_positive());
    }
    bool denom_ok = true;
    for (size_t j = 0; j < pp.b.size() && denom_ok; ++j) {
      if (is_nonpositive_integer(Rational(1 + pp.a - pp.b[j])) ||
          is_nonpositive_integer(Rational(1 + pp.a - pp.c[j])))
        denom_ok = false;
    }
    if (pp.c0 && is_nonpositive_integer(Rational(1 + pp.a - *pp.c0))) denom_ok = false;
    if (is_nonpositive_integer(Rational(pp.a / 2))) denom_ok = false;
    if (!denom_ok) continue;
    if (check_prop2_conditions(part, pp).pass) return pp;
  }
}

std::vector<ParameterVectorH> zudilin_grid(int m, int count) {
  static const long frac_num[] = {0, 1, 1, 2, 1, 3, 2, 5};
  static const long frac_den[] = {1, 2, 3, 3, 4, 4, 5, 6};
  static const long small_num[] = {1, 1, 3, 2, 5, 1, 4, 7};
  static const long small_den[] = {1, 2, 4, 3, 4, 3, 5, 8};

  std::vector<ParameterVectorH> out;
  int i = 0;
  while (static_cast<int>(out.size()) < count) {
    ParameterVectorH hv;
    hv.m = m;
    Rational h0 = Rational(20 + (i % 7)) + Rational(frac_num[i % 8], frac_den[i % 8]);
    h0.canonicalize();
    hv.h.push_back(h0);
    for (int j = 1; j <= m + 2; ++j) {
      Rational q(small_num[(i + 3 * j) % 8], small_den[(i + 3 * j) % 8]);
      q.canonicalize();
      hv.h.push_back(q);
    }
    ++i;
    if (!check_h_conditions(hv).pass) continue;
    bool mappable = true;
    try {
      map_h_to_jm(hv);
    } catch (const Error&) {
      mappable = false;
    }
    if (mappable) out.push_back(std::move(hv));
  }
  return out;
}

JmParams random_jm_params(CaseRng& rng, int m, const Rational& z_max) {
  JmParams p;
  p.m = m;
  for (int i = 0; i <= m; ++i) {
    Rational ai = rng.rational(1, 8, 4) + Rational(1, 4);
    ai.canonicalize();
    p.a.push_back(ai);
  }
  for (int i = 1; i <= m; ++i) {
    Rational gap = rng.rational(1, 8, 4) + Rational(1, 4);
    gap.canonicalize();
    p.b.push_back(p.a_at(i) + gap);
  }
  // z uniform-ish in [-z_max, z_max] with denominator 16
  long steps = 32;
  Rational z = z_max * Rational(rng.in_range(-steps, steps), steps);
  z.canonicalize();
  p.z = z;
  return p;
}

}  // namespace vwp
