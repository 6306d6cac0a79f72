#include "vwp/integral.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <map>

#include "vwp/numeric_core.hpp"

namespace vwp {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

void JmParams::validate_shape() const {
  if (m < 1) throw InvalidParameters("m must be >= 1");
  if (a.size() != static_cast<size_t>(m) + 1)
    throw InvalidParameters("a must have m+1 entries a_0..a_m");
  if (b.size() != static_cast<size_t>(m))
    throw InvalidParameters("b must have m entries b_1..b_m");
}

ConvergenceVerdict check_jm_conditions(const JmParams& p) {
  p.validate_shape();
  ConvergenceVerdict v;
  v.add("a0>0", p.a_at(0) > 0, "a_0 = " + to_string(p.a_at(0)));
  for (int i = 1; i <= p.m; ++i) {
    v.add("a>0[i=" + std::to_string(i) + "]", p.a_at(i) > 0, "a_i = " + to_string(p.a_at(i)));
    v.add("b>a[i=" + std::to_string(i) + "]", p.b_at(i) > p.a_at(i),
          "b_i - a_i = " + to_string(Rational(p.b_at(i) - p.a_at(i))));
  }
  v.add("|z|<=1", abs_q(p.z) <= 1, "z = " + to_string(p.z));
  if (p.z == 1) {
    Rational margin = p.b_at(1) - p.a_at(1) - p.a_at(0);
    if (p.m == 1)
      v.add("z1_margin", margin > 0,
            "b_1-a_1-a_0 = " + to_string(margin) + " (need > 0 for m=1)");
    else
      v.add("z1_margin", margin >= 0,
            "b_1-a_1-a_0 = " + to_string(margin) + " (need >= 0 for m>1)");
  }
  return v;
}

double eval_Q(std::span<const double> x, double z) {
  const size_t m = x.size();
  if (m == 0) throw InvalidParameters("eval_Q needs at least one coordinate");
  if (m == 1) return 1.0 - x[0] * z;
  double u = 1.0 - x[m - 1];
  for (size_t i = m - 1; i-- > 1;) u = 1.0 - u * x[i];
  return 1.0 - u * x[0] * z;
}

namespace {

struct FixedRule {
  std::vector<double> nodes, weights;
};

FixedRule jacobi_rule(int n, double alpha, double beta) {
  // weight (1-x)^alpha (x-0)^beta on [0,1]
  gsl_integration_fixed_workspace* w = gsl_integration_fixed_alloc(
      gsl_integration_fixed_jacobi, static_cast<size_t>(n), 0.0, 1.0, alpha, beta);
  if (!w) throw Error("QuadratureInit", "failed to build Gauss-Jacobi rule");
  FixedRule r;
  const double* xs = gsl_integration_fixed_nodes(w);
  const double* ws = gsl_integration_fixed_weights(w);
  r.nodes.assign(xs, xs + n);
  r.weights.assign(ws, ws + n);
  gsl_integration_fixed_free(w);
  return r;
}

double tensor_pass(const JmParams& p, int n) {
  const int m = p.m;
  std::vector<FixedRule> rules;
  rules.reserve(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) {
    double ai = Real(p.a_at(i), 64).to_double();
    double bi = Real(p.b_at(i), 64).to_double();
    rules.push_back(jacobi_rule(n, bi - ai - 1.0, ai - 1.0));
  }
  const double a0 = Real(p.a_at(0), 64).to_double();
  const double z = Real(p.z, 64).to_double();

  std::vector<int> idx(static_cast<size_t>(m), 0);
  std::vector<double> x(static_cast<size_t>(m), 0.0);
  double acc = 0.0;
  for (;;) {
    double wprod = 1.0;
    for (int i = 0; i < m; ++i) {
      x[static_cast<size_t>(i)] = rules[static_cast<size_t>(i)].nodes[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      wprod *= rules[static_cast<size_t>(i)].weights[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    }
    acc += wprod * std::pow(eval_Q(x, z), -a0);
    int i = m - 1;
    for (; i >= 0; --i) {
      if (++idx[static_cast<size_t>(i)] < n) break;
      idx[static_cast<size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return acc;
}

}  // namespace

QuadratureResult eval_jm_quadrature(const JmParams& p, const QuadratureConfig& grid) {
  ConvergenceVerdict v = check_jm_conditions(p);
  if (!v.pass) throw ConditionViolated("integral parameter conditions fail");
  if (p.m > 4)
    throw DimensionTooLarge("tensor quadrature is limited to m <= 4; use the recursive evaluator");
  double coarse = tensor_pass(p, grid.coarse_nodes);
  double fine = tensor_pass(p, grid.fine_nodes);
  return {fine, std::abs(fine - coarse)};
}

namespace {

// Recursive expansion of J_m with all inner evaluations memoized by the
// accumulated integer shift.  Level ell is the sub-integral J_ell over the
// parameter prefix a_0..a_ell, b_1..b_ell, everything shifted by sigma.
class RecursiveEvaluator {
 public:
  RecursiveEvaluator(const JmParams& p, const PrecisionConfig& cfg)
      : p_(p), cfg_(cfg), P_(static_cast<mpfr_prec_t>(cfg.working_bits + 320)) {
    gcfg_ = cfg_;
    gcfg_.working_bits = cfg_.working_bits + 288;  // gammas at summation precision
  }

  Real eval(double tol, long* terms) {
    terms_ = 0;
    Real r = level(p_.m, 0, tol);
    if (terms) *terms = terms_;
    return r;
  }

 private:
  Real level(int ell, long sigma, double tol) {
    if (ell == 0) return Real(1L, P_);
    auto& memo = memo_[ell];
    auto it = memo.find(sigma);
    if (it != memo.end()) return it->second;

    const bool odd_step = (ell % 2 == 1);
    const int child = odd_step ? ell - 1 : ell - 2;
    const double child_tol = tol / 64.0;

    // Gamma prefactor of this step
    Real pre(1L, P_);
    pre *= gamma(Rational(p_.a_at(ell) + sigma), gcfg_);
    pre *= gamma(Rational(p_.b_at(ell) - p_.a_at(ell)), gcfg_);
    pre /= gamma(Rational(p_.b_at(ell) + sigma), gcfg_);
    if (!odd_step) {
      pre *= gamma(Rational(p_.a_at(ell - 1) + sigma), gcfg_);
      pre *= gamma(Rational(p_.b_at(ell - 1) - p_.a_at(ell - 1)), gcfg_);
      pre /= gamma(Rational(p_.b_at(ell - 1) + sigma), gcfg_);
    }
    // the raw sum is later scaled by `pre`, so its own tolerance budget is
    // tol/|pre| (a small prefactor buys the sum proportional slack)
    double pre_mag = std::max(std::abs(pre.to_double()), 1e-280);
    double sum_tol = tol / (2.0 * pre_mag);

    // coefficient stream rho_k: the Pochhammer quotient without the inner J
    // factor.  Odd step: z^k (a_0+s)_k (a_ell+s)_k / (k! (b_ell+s)_k).
    // Even step: z^k (b_ell-a_ell)_k (a_{ell-1}+s)_k (a_0+s)_k /
    //            (k! (b_ell+s)_k (b_{ell-1}+s)_k).
    // Factor registers advance by exact +1 steps; only the initial rational
    // conversion rounds.
    std::vector<Real> nums, dens;
    nums.emplace_back(Rational(p_.a_at(0) + sigma), P_);
    dens.emplace_back(Rational(p_.b_at(ell) + sigma), P_);
    if (odd_step) {
      nums.emplace_back(Rational(p_.a_at(ell) + sigma), P_);
    } else {
      nums.emplace_back(Rational(p_.b_at(ell) - p_.a_at(ell)), P_);
      nums.emplace_back(Rational(p_.a_at(ell - 1) + sigma), P_);
      dens.emplace_back(Rational(p_.b_at(ell - 1) + sigma), P_);
    }
    const int zsign = (p_.z == -1) ? -1 : (p_.z == 1 ? 1 : 0);
    Real zreal(p_.z, P_);
    Real rho(1L, P_);
    std::function<Real(long)> term = [&](long k) -> Real {
      Real t = rho * level(child, sigma + k, child_tol);
      ++terms_;
      for (auto& f : nums) {
        mpfr_mul(rho.raw(), rho.raw(), f.raw(), MPFR_RNDN);
        mpfr_add_ui(f.raw(), f.raw(), 1, MPFR_RNDN);
      }
      for (auto& f : dens) {
        mpfr_div(rho.raw(), rho.raw(), f.raw(), MPFR_RNDN);
        mpfr_add_ui(f.raw(), f.raw(), 1, MPFR_RNDN);
      }
      mpfr_div_ui(rho.raw(), rho.raw(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
      if (zsign < 0)
        mpfr_neg(rho.raw(), rho.raw(), MPFR_RNDN);
      else if (zsign == 0)
        mpfr_mul(rho.raw(), rho.raw(), zreal.raw(), MPFR_RNDN);
      return t;
    };

    SumOutcome out;
    Rational az = abs_q(p_.z);
    if (az < 1) {
      double azd = Real(az, 64).to_double();
      out = sum_geometric_series(term, azd, sum_tol, P_, cfg_.max_terms);
    } else {
      TailSumOptions opt;
      opt.tol = sum_tol;
      opt.prec = P_;
      opt.alternating = (p_.z == -1);
      opt.theta = Real(1L, 64);
      // a shift of sigma delays the power-law regime: the tail coefficients
      // in 1/K grow like sigma^i, so the fit window must scale with sigma
      // (and a wider basis flattens the window growth)
      opt.fit_basis = sigma > 64 ? 36 : 24;
      // level tails carry no logarithmic terms (the inner integral's large-
      // shift expansion is a pure power series); log columns would only
      // slow the ladder down
      opt.fit_max_log_power = 0;
      opt.first_checkpoint = std::max<long>(416, 8 * sigma);
      opt.checkpoints = 5;
      // the fit ladder tops out at 32x the first window; direct terms past
      // that cannot reach these tolerances anyway
      opt.max_terms = std::min<long>(cfg_.max_terms, 33 * opt.first_checkpoint);
      out = sum_power_tail_series(term, opt);
    }
    Real value = pre * out.value;
    if (getenv("VWP_TRACE"))
      fprintf(stderr, "level=%d sigma=%ld terms=%ld method=%d\n", ell, sigma, out.terms_used,
              (int)out.method);
    memo.emplace(sigma, value);
    return value;
  }

  const JmParams& p_;
  PrecisionConfig cfg_;
  PrecisionConfig gcfg_;
  mpfr_prec_t P_;
  long terms_ = 0;
  std::map<int, std::map<long, Real>> memo_;
};

}  // namespace

RecursiveResult eval_jm_recursive(const JmParams& p, const PrecisionConfig& cfg) {
  cfg.validate();
  ConvergenceVerdict v = check_jm_conditions(p);
  if (!v.pass) throw ConditionViolated("integral parameter conditions fail");

  RecursiveEvaluator ev(p, cfg);
  long terms = 0;
  double tol = cfg.target_abs_tol / 4.0;
  Real value = ev.eval(tol, &terms);
  Real err(tol, static_cast<mpfr_prec_t>(cfg.working_bits + 32));
  return {value, err, terms};
}

}  // namespace vwp
