#pragma once

#include <vector>

#include "vwp/errors.hpp"
#include "vwp/rational.hpp"
#include "vwp/verdict.hpp"

namespace vwp {

// Exponent data for the model multiple series
//   sum_{k_1..k_s >= 0} prod_j (k_j+1)^{E_j} (k_1+...+k_j+1)^{F_j}.
struct DomainInput {
  std::vector<Rational> E;
  std::vector<Rational> F;

  void validate() const;
  size_t s() const { return E.size(); }
};

// Sum-set criterion: with Z_j = {F_j, E_j+F_j+1}, the series converges iff
//   E_r + F_r + 1 + max(Z_{r+1} + ... + Z_s) < 0   for every r = 1..s.
ConvergenceVerdict check_lemma4(const DomainInput& d);

// Nested-sum domain for s_1..s_d (s_1 belongs to the innermost index):
// every suffix must satisfy sum_{i=r..d} s_i > d - r + 1.  Equivalent to
// check_lemma4 with E_i = 0, F_i = -s_i.
ConvergenceVerdict check_multizeta_domain(const std::vector<Rational>& s);

// Empirical cross-check: partial sums of the model series restricted to the
// suffix indices k_r..k_s (earlier indices pinned to 0), over the simplex
// k_r+...+k_s <= cap, one value per cap.  Double precision.
std::vector<double> divergence_probe_sums(const DomainInput& d, size_t r,
                                          const std::vector<int>& caps);

}  // namespace vwp
