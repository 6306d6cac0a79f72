#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vwp/integral.hpp"
#include "vwp/multisum.hpp"
#include "vwp/precision.hpp"
#include "vwp/series.hpp"
#include "vwp/verdict.hpp"

namespace vwp {

// h = (h_0, ..., h_{m+2}) driving both sides of the integral/series identity.
struct ParameterVectorH {
  int m = 1;
  std::vector<Rational> h;

  void validate_shape() const;
};

// The identity's hypothesis: 1+h_0 > (2/(m+1)) sum h_j, the sandwich
// 1+h_0-h_{j+1} > h_j > 0 for j = 2..m+1, and 1+h_0-h_3-h_2 >= h_1 (plus
// h_1 > 0 so the integral exists).
ConvergenceVerdict check_h_conditions(const ParameterVectorH& h);

// a_{j-1} = h_j, b_j = 1+h_0-h_{j+2}, z = 1.  Throws ConditionViolated when
// the resulting integral parameters are inadmissible.
JmParams map_h_to_jm(const ParameterVectorH& h);

struct VerificationReport {
  std::string identity;
  bool exact = false;  // exact-rational comparison
  std::optional<Rational> lhs_exact, rhs_exact;
  Real lhs, rhs, abs_diff;
  double tolerance = 0;  // unused when exact
  bool passed = false;
  std::vector<ConditionCheck> conditions;
  std::vector<long> terms_used;
  double wall_ms = 0;
};

// Terminating identity: very-well-poised (2s+5)F(2s+4) at 1 against the
// terminating multiple sum; exact rational equality.
VerificationReport check_andrews(int s, long N, const Rational& a,
                                 const std::vector<Rational>& b,
                                 const std::vector<Rational>& c);

// s = 1 classical transformation: balanced 4F3(1) against the
// very-well-poised 7F6(1); exact rational equality.
VerificationReport check_whipple(long N, const Rational& a, const Rational& b,
                                 const Rational& c, const Rational& e, const Rational& f);

// Nonterminating limits: series side against Gamma prefactor times the
// multiple sum, numerically at cfg.target_abs_tol.
VerificationReport check_prop2(Prop2Part part, const Prop2Params& params,
                               const PrecisionConfig& cfg);

enum class JmMethod { recursive, multisum, quadrature };

// Integral (via map_h_to_jm and the chosen evaluator) against the Gamma
// prefactor times the very-well-poised series.
VerificationReport check_zudilin(const ParameterVectorH& h, const PrecisionConfig& cfg,
                                 JmMethod lhs_method = JmMethod::recursive);

// The integer family J_{E,n}: integral against the specialized series.
// Desk-scale guard: 2 <= E <= 6, 0 <= n <= 3.
VerificationReport check_vasilyev(int E, long n, const PrecisionConfig& cfg);

ParameterVectorH vasilyev_h(int E, long n);
JmParams vasilyev_jm(int E, long n);

// ---- deterministic case generation ----------------------------------------

// Portable generator (splitmix64 core): identical streams on every platform,
// so seeded reports replay bit-identically.
class CaseRng {
 public:
  explicit CaseRng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  long below(long n);                       // uniform in [0, n)
  long in_range(long lo, long hi);          // uniform in [lo, hi]
  Rational rational(long num_lo, long num_hi, long den_hi);

 private:
  uint64_t state_;
};

struct AndrewsCase {
  int s;
  long N;
  Rational a;
  std::vector<Rational> b, c;
};
AndrewsCase random_andrews_case(CaseRng& rng, int s, long max_N);

struct WhippleCase {
  long N;
  Rational a, b, c, e, f;
};
WhippleCase random_whipple_case(CaseRng& rng, long max_N);

Prop2Params random_prop2_case(CaseRng& rng, Prop2Part part, int s);

// Documented admissible grid for the integral/series identity: h_0 walks a
// fixed ladder above 20 while h_1..h_{m+2} cycle small positive rationals;
// every vector is revalidated against the hypothesis before use.
std::vector<ParameterVectorH> zudilin_grid(int m, int count);

// Random admissible integral parameters with |z| <= z_max < 1.
JmParams random_jm_params(CaseRng& rng, int m, const Rational& z_max);

}  // namespace vwp
