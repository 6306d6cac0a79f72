#pragma once

#include <map>
#include <vector>

#include "vwp/errors.hpp"
#include "vwp/precision.hpp"
#include "vwp/rational.hpp"
#include "vwp/real.hpp"

namespace vwp {

// Exact partial fractions of the specialized series term as a rational
// function of k: R(k) = sum_{j,i} c_{i,j} / (k+j)^i with poles confined to
// integers j in [n+1, 2n+1].
struct PartialFractionTable {
  int E = 2;
  long n = 0;
  // entries[j][i-1] = c_{i,j}
  std::map<long, std::vector<Rational>> entries;
  std::vector<Rational> polynomial_part;  // must stay empty: R is proper

  Rational evaluate(const Rational& k) const;
};

// Full k-th term of the specialized series (prefactor included), excluding
// the sign (+-1)^k which the decomposition tracks separately.
Rational specialized_summand(int E, long n, long k);

// Desk-scale guard: 2 <= E <= 6, 0 <= n <= 3.  Verified by exact
// re-evaluation at k = 0..19; throws ReconstructionMismatch on failure.
PartialFractionTable partial_fraction_decompose(int E, long n);

struct ZetaDecomposition {
  int E = 2;
  long n = 0;
  Rational p0;
  std::map<int, Rational> p;  // m -> coefficient, m = 2..E with m = E (mod 2)
  // nonzero coefficients outside the allowed parity set; empty on success
  std::vector<std::pair<int, Rational>> residual_terms;
};

// Sums sum_k (+-1)^k R(k) in closed form through integer zeta values and
// exact finite corrections.  ParityViolation when a wrong-parity
// coefficient survives, LogTermSurvives when a first-order pole fails to
// cancel.
ZetaDecomposition zeta_decompose(int E, long n);

// p0 + sum_m p_m zeta(m) at working precision.
Real reconstruct_value(const ZetaDecomposition& d, const PrecisionConfig& cfg);

struct IntegralityEntry {
  int m = 0;  // 0 for the rational part
  Rational coeff;
  bool integral = false;    // d_n^E * coeff is an integer
  bool conjectural = false; // the m = 0, even-E case
};

struct IntegralityReport {
  int E = 2;
  long n = 0;
  BigInt d_n;
  std::vector<IntegralityEntry> entries;
  bool all_integral = true;
};

IntegralityReport check_integrality(const ZetaDecomposition& d);

}  // namespace vwp
