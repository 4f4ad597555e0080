// Test-only reference implementations, independent of the library paths
// they check: multiprecision Spouge gamma, Hasse zeta, Taylor erfc, panel
// quadrature for oscillatory expectations, and a brute-force convolution.
#ifndef LNLAPLACE_TESTS_ORACLES_HPP
#define LNLAPLACE_TESTS_ORACLES_HPP

#include <vector>

#include "lnlaplace/types.hpp"

namespace oracles {

using lnlaplace::complex_t;
using lnlaplace::LognormalParams;

// Gamma(s) by the Spouge sum (a = 64) at 50-digit working precision,
// rounded to double at the end. Valid for Re s > -0.5 off the poles.
complex_t gamma_mp(complex_t s);

// zeta(k) for integer k >= 2 by the globally convergent Hasse series at
// 50-digit working precision.
double zeta_mp(int k);

// Taylor coefficients b_j of Gamma(s) - 1/s about 0: the exp-series
// construction reproduced at 50-digit precision with zeta_mp.
std::vector<double> gamma_taylor_mp(int j_max);

// erfc and erfcx from the Maclaurin series of erf at 100-digit working
// precision; reliable for |w| <= 8.
complex_t erfc_mp(complex_t w);
complex_t erfcx_mp(complex_t w);

// erfcx by the large-argument asymptotic series (Re w > 0, |w| >= 8).
complex_t erfcx_asymptotic(complex_t w);

// E[exp(i t X)] by half-period panel quadrature of the defining integral
// on (0, X_max], X_max at the 12-sigma point.
complex_t characteristic_direct(double t, const LognormalParams& p);

// Numeric Mellin transform integral z^(s-1) phi(z) dz with phi supplied by
// the caller-selected evaluator (direct transform in the tests).
complex_t mellin_numeric(complex_t s, const LognormalParams& p);

// Density of X1 + X2 (independent lognormals) by adaptive convolution of
// the closed-form densities.
double convolution_density(double x, const LognormalParams& p1,
                           const LognormalParams& p2);

// d/dz of the continued transform at an upper-limit boundary point by
// one-sided second-order vertical differences with one Richardson step.
complex_t boundary_derivative_fd(double t, const LognormalParams& p);

}  // namespace oracles

#endif
