#pragma once

#include <span>
#include <vector>

#include "vwp/errors.hpp"
#include "vwp/precision.hpp"
#include "vwp/rational.hpp"
#include "vwp/real.hpp"
#include "vwp/tail_sum.hpp"
#include "vwp/verdict.hpp"

namespace vwp {

// Parameters of the nested-denominator integral
//   J_m = int_{[0,1]^m} prod_i x_i^{a_i-1}(1-x_i)^{b_i-a_i-1} / Q_m(x;z)^{a_0} dx
// with Q_m(x;z) = 1 - (1-(...(1-x_m)x_{m-1})...)x_1 z.
struct JmParams {
  int m = 1;
  std::vector<Rational> a;  // a_0..a_m  (m+1 entries)
  std::vector<Rational> b;  // b_1..b_m  (m entries)
  Rational z = 1;

  const Rational& a_at(int i) const { return a[static_cast<size_t>(i)]; }        // a_i
  const Rational& b_at(int i) const { return b[static_cast<size_t>(i) - 1]; }    // b_i
  void validate_shape() const;  // sizes only; value conditions via check_jm_conditions
};

// Admissibility: b_i > a_i > 0, a_0 > 0, |z| <= 1, and for z = 1 the margin
// condition b_1 - a_1 > a_0 (m = 1) or b_1 - a_1 >= a_0 (m > 1).
ConvergenceVerdict check_jm_conditions(const JmParams& p);

// Nested denominator; for m = 1 this is 1 - x_1 z.
double eval_Q(std::span<const double> x, double z);

struct QuadratureConfig {
  int coarse_nodes = 32;
  int fine_nodes = 64;
};

struct QuadratureResult {
  double value = 0;
  double error_heuristic = 0;
};

// Tensor Gauss-Jacobi quadrature honouring the x^(a-1)(1-x)^(b-a-1)
// endpoint weights.  m <= 4 only; use the recursive evaluator beyond that.
QuadratureResult eval_jm_quadrature(const JmParams& p, const QuadratureConfig& grid = {});

struct RecursiveResult {
  Real value;
  Real error_estimate;
  long terms_used = 0;
};

// Evaluates J_m through the one-index expansions: one odd step from the top
// when m is odd, then even steps down to J_0 = 1.  Level sums share the
// series tail machinery; inner evaluations are memoized per integer shift.
RecursiveResult eval_jm_recursive(const JmParams& p, const PrecisionConfig& cfg);

}  // namespace vwp
