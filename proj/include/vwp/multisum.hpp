#pragma once

#include <optional>
#include <vector>

#include "vwp/errors.hpp"
#include "vwp/integral.hpp"
#include "vwp/precision.hpp"
#include "vwp/rational.hpp"
#include "vwp/real.hpp"
#include "vwp/tail_sum.hpp"
#include "vwp/verdict.hpp"

namespace vwp {

// One summation index of a nested multiple sum.  The level-j factor is a
// product of Pochhammer ratios in the index k_j itself ("own", with the
// implicit k_j! denominator) and in the running total K_j = k_1+...+k_j.
struct SumLevel {
  std::vector<Rational> own_num;
  std::vector<Rational> own_den;
  std::vector<Rational> tot_num;
  std::vector<Rational> tot_den;
};

// A multiple sum sum_{k_1..k_s} z^{K_s} prod_j level_j, compiled to factor
// lists.  This is what the simplex engine consumes.
struct MultisumSpec {
  std::vector<SumLevel> levels;
  Rational z = 1;

  size_t s() const { return levels.size(); }
  void validate() const;  // no own/tot denominator a non-positive integer
};

struct MultisumResult {
  Real value;
  Real error_estimate;
  long terms_used = 0;
  SumMethod method = SumMethod::direct;
};

// Deterministic simplex summation over total degree K_s <= cap with the
// doubling policy; falls back to shell tail fitting when the tolerance is
// unreachable within cfg.simplex_cap.
MultisumResult eval_multisum(const MultisumSpec& spec, const PrecisionConfig& cfg);

// ---- shape builders -------------------------------------------------------

// Terminating multiple sum of Andrews' identity, including the
// (1+a)_N (1+a-b_{s+1}-c_{s+1})_N / ((1+a-b_{s+1})_N (1+a-c_{s+1})_N)
// prefactor.  b and c carry s+1 entries each.  Exact.
Rational eval_andrews_rhs_exact(long N, const Rational& a, const std::vector<Rational>& b,
                                const std::vector<Rational>& c);

// s-fold sums on the nonterminating side (without their Gamma prefactors).
MultisumResult eval_feven_rhs(const Rational& a, const std::vector<Rational>& b,
                              const std::vector<Rational>& c, const PrecisionConfig& cfg);
MultisumResult eval_fodd_rhs(const Rational& a, const Rational& c0,
                             const std::vector<Rational>& b, const std::vector<Rational>& c,
                             const PrecisionConfig& cfg);

// Multisum expansion of J_m (Gamma prefactor included).  Requires |z| < 1,
// or z = 1 with the strict sum-set conditions on the printed exponent
// assignments (boundary equalities are rejected).
MultisumResult eval_zlobin_multisum(const JmParams& p, const PrecisionConfig& cfg);

// The sum-set conditions gating eval_zlobin_multisum at z = 1.
ConvergenceVerdict zlobin_z1_conditions(const JmParams& p);

enum class Prop2Part { even, odd };

struct Prop2Params {
  Rational a;
  std::optional<Rational> c0;   // odd part only
  std::vector<Rational> b, c;   // s+1 entries (even) or s entries (odd)

  int s() const;
  void validate(Prop2Part part) const;
};

// Every inequality of the nonterminating identity's hypothesis, including
// all sign-pattern choices A_j in {1,2}; failures are reported with their r
// and pattern.
ConvergenceVerdict check_prop2_conditions(Prop2Part part, const Prop2Params& params);

}  // namespace vwp
