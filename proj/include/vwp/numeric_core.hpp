#pragma once

#include "vwp/errors.hpp"
#include "vwp/precision.hpp"
#include "vwp/rational.hpp"
#include "vwp/real.hpp"

namespace vwp {

// Rising factorial (x)_ell = x(x+1)...(x+ell-1), (x)_0 = 1.  Exact.
Rational pochhammer(const Rational& x, long ell);
// Same at the argument's working precision.
Real pochhammer(const Real& x, long ell);

// Gamma for positive arguments only; NonPositiveArgument otherwise.
Real gamma(const Real& x, const PrecisionConfig& cfg);
Real gamma(const Rational& x, const PrecisionConfig& cfg);

// Gamma(alpha+k)/Gamma(beta+k).  When alpha-beta is an integer the quotient
// collapses to a finite Pochhammer product and no Gamma is evaluated.
Real gamma_ratio(const Real& alpha, const Real& beta, long k, const PrecisionConfig& cfg);

// zeta(m) for integer m >= 2 at working precision.
Real zeta_int(long m, const PrecisionConfig& cfg);

// lcm{1,...,n}; 1 for n in {0,1}.  Computed from prime powers <= n.
BigInt lcm_upto(long n);

}  // namespace vwp
