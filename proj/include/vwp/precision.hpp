#pragma once

#include <mpfr.h>

namespace vwp {

struct PrecisionConfig {
  long working_bits = 256;        // >= 64
  double target_abs_tol = 1e-20;  // > 0
  long max_terms = 2000000;       // >= 1
  long simplex_cap = 4096;        // >= 1, bound on total degree of multiple sums

  // throws InvalidParameters when an invariant fails
  void validate() const;

  // working precision plus guard bits; all evaluations round here
  mpfr_prec_t eval_prec() const { return static_cast<mpfr_prec_t>(working_bits + 32); }
};

}  // namespace vwp
