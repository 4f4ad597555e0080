#ifndef LNLAPLACE_SPECIAL_FUNCTIONS_HPP
#define LNLAPLACE_SPECIAL_FUNCTIONS_HPP

#include <vector>

#include "lnlaplace/types.hpp"

namespace lnlaplace {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008;

// Gamma function on the complex plane. Lanczos approximation on
// Re s >= 0.5, reflection formula on the left half plane. Poles are
// detected before reflection.
complex_t gamma_complex(complex_t s);

// log Gamma for Re s > 0 (any 2*pi*i branch; exp(log_gamma_complex(s))
// recovers gamma_complex(s)). Safe for large |Im s| where gamma itself
// under/overflows.
complex_t log_gamma_complex(complex_t s);

// 1/Gamma(s), entire; exact zeros at nonpositive integers.
complex_t recip_gamma_complex(complex_t s);

// Complementary error function and its scaled variant
// erfcx(w) = exp(w^2) * erfc(w). erfcx stays finite for Re w >> 0 where
// erfc underflows; erfc raises OverflowError where exp(-w^2) overflows.
complex_t erfc_complex(complex_t w);
complex_t erfcx_complex(complex_t w);

// Probabilist's Hermite polynomial H_m by the three-term recurrence
// H_{m+1}(x) = x H_m(x) - m H_{m-1}(x). DegreeError for m > 64.
complex_t hermite_prob(int m, complex_t x);

struct IncompleteGammaPair {
    complex_t lower;  // gamma(s, alpha)
    complex_t upper;  // Gamma(s, alpha)
};

// Lower incomplete gamma by the alternating power series
// sum_n (-1)^n alpha^(s+n) / (n! (s+n)), upper by the Legendre continued
// fraction; lower + upper = Gamma(s) for Re s > 0.
IncompleteGammaPair incomplete_gamma_pair(complex_t s, double alpha);

// Taylor coefficients b_j of Gamma(s) - 1/s about s = 0 (equivalently the
// coefficients of Gamma(s+1) shifted down one index). b_0 = -EulerGamma.
struct GammaTaylorTable {
    std::vector<double> coeffs;  // b_0 .. b_{j_max}

    int j_max() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    double operator[](int j) const { return coeffs.at(static_cast<size_t>(j)); }

    // Partial sum of sum_j b_j s^j; with 1/s added this approximates
    // Gamma(s) for |s| < 1.
    double series_at(double s) const;
};

// Coefficients via exponentiation of the log-gamma series
// -EulerGamma*s + sum_{k>=2} (-1)^k zeta(k) s^k / k. DegreeError for
// j_max > 40; the table type requires j_max >= 20.
GammaTaylorTable gamma_taylor_coeffs(int j_max);

// a_m = b_m + (-1)^(m+1) * sum_{j=1}^{N} (-1)^j / (j! j^(m+1)),
// m = 0..m_max. N = 0 gives the empty-sum convention a_m = b_m.
std::vector<double> a_coefficients(int m_max, int n_poles);

// Riemann zeta at integer k >= 2 (Euler-Maclaurin), accurate to ~1e-16.
double zeta_integer(int k);

}  // namespace lnlaplace

#endif
