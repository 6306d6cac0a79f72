#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vwp/errors.hpp"
#include "vwp/precision.hpp"
#include "vwp/rational.hpp"
#include "vwp/real.hpp"
#include "vwp/tail_sum.hpp"
#include "vwp/verdict.hpp"

namespace vwp {

// Generalized hypergeometric series
//   sum_k  (alpha_0)_k ... (alpha_p)_k / (k! (beta_1)_k ... (beta_p)_k) z^k
// with p+1 numerator and p denominator parameters, all exact rationals.
struct SeriesSpec {
  std::vector<Rational> alphas;  // alpha_0 .. alpha_p
  std::vector<Rational> betas;   // beta_1 .. beta_p
  Rational z;

  // throws InvalidParameters when |z| > 1, the parameter counts do not
  // match, or some beta is a non-positive integer
  void validate() const;
  size_t p() const { return betas.size(); }
};

struct SeriesClass {
  bool terminating = false;
  bool balanced = false;
  bool very_well_poised = false;
  ConvergenceVerdict convergent;
};

SeriesClass classify_series(const SeriesSpec& spec);

struct PfqResult {
  Real value;
  Real error_estimate;
  long terms_used = 0;
  SumMethod method = SumMethod::direct;
};

// Evaluates the series to cfg.target_abs_tol.  Requires a convergent spec.
PfqResult eval_pfq(const SeriesSpec& spec, const PrecisionConfig& cfg);

// Exact rational value of a terminating series (some alpha = -N).
Rational eval_pfq_exact_terminating(const SeriesSpec& spec);

// Quotient of Gamma values prod Gamma(num_j) / prod Gamma(den_j), kept
// symbolic until evaluated.  All arguments must be positive at evaluation.
struct GammaProduct {
  std::vector<Rational> numerator_args;
  std::vector<Rational> denominator_args;

  Real eval(const PrecisionConfig& cfg) const;
  // exact value when every argument is a positive integer
  std::optional<Rational> exact_value() const;
};

int vector_h_size(int m);  // = m + 3 entries h_0..h_{m+2}

// Right-hand side of the main integral/series identity: the Gamma-quotient
// prefactor and the very-well-poised (m+4)F(m+3) at z = (-1)^(m+1) built
// from h = (h_0, ..., h_{m+2}).
std::pair<GammaProduct, SeriesSpec> build_zudilin_rhs_series(int m,
                                                             const std::vector<Rational>& h);

// Specialization to the Vasilyev integrals J_{E,n}: exact rational prefactor
// n!^(2E+1) (3n+2)! / (2n+1)!^(E+2) and the (E+4)F(E+3) series.
std::pair<Rational, SeriesSpec> build_vasilyev_series(int E, long n);

}  // namespace vwp
