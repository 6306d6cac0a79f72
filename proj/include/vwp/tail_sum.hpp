#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vwp/errors.hpp"
#include "vwp/real.hpp"

namespace vwp {

enum class SumMethod { direct, tail_fit, terminated };

struct SumOutcome {
  Real value;
  Real error_estimate;
  long terms_used = 0;
  SumMethod method = SumMethod::direct;
};

// Summation controls for series on the unit circle whose terms follow the
// power-law model |t_k| ~ C (k+1)^(-theta-1).
struct TailSumOptions {
  double tol = 1e-20;
  mpfr_prec_t prec = 576;
  long max_terms = 2000000;
  bool alternating = false;  // strictly alternating signs (z = -1)
  // leading tail exponent theta: partial-sum tails behave like K^(-theta)
  Real theta{1.0, 64};
  // tail-fit ladder
  int fit_basis = 28;          // power columns per log power
  int fit_max_log_power = 2;   // 0 disables log columns entirely
  long first_checkpoint = 832; // terms summed before the first fit attempt
  int checkpoints = 5;         // geometric checkpoint ladder
  bool allow_fit = true;
};

namespace detail {

// Tail extrapolation on stored partial sums, psums[k] = t_0 + ... + t_{k-1}.
// Fits S_inf - sum_i c_i K^(-theta-i) log(K)^j through sampled K.  A fit is
// accepted only when the held-out residuals pass AND the estimate agrees
// with an independent window (the previous attempt's, or a fresh control
// window on the first attempt): a wrong tail model drifts between windows,
// the right one does not.
class TailFitter {
 public:
  TailFitter(Real theta, bool even_samples_only, mpfr_prec_t prec, int basis,
             int max_log_power);

  // returns (value, error_estimate) once validated below tol
  std::optional<std::pair<Real, Real>> attempt(const std::vector<Real>& psums,
                                               long terms_summed, double tol);

 private:
  Real theta_;
  bool even_only_;
  mpfr_prec_t prec_;
  int basis_;
  int max_log_power_;
  std::optional<Real> prev_[3];
};

}  // namespace detail

// Sums t_0 + t_1 + ... where term(k) is called with k = 0,1,2,... in order.
// Direct summation with the power-law stopping rule; when the rule is
// unreachable within the checkpoint budget, tail fitting takes over.
// Throws MaxTermsExceeded when neither converges within max_terms.
SumOutcome sum_power_tail_series(const std::function<Real(long)>& term,
                                 const TailSumOptions& opt);

// |z| < 1: plain summation with a geometric tail bound.
SumOutcome sum_geometric_series(const std::function<Real(long)>& term, double abs_z,
                                double tol, mpfr_prec_t prec, long max_terms);

}  // namespace vwp
