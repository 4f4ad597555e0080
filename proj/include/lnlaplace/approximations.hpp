#ifndef LNLAPLACE_APPROXIMATIONS_HPP
#define LNLAPLACE_APPROXIMATIONS_HPP

#include <optional>
#include <vector>

#include "lnlaplace/types.hpp"

namespace lnlaplace {

// Configuration for the small-argument convergent series: splitting
// parameter alpha >= 1, number of retained terms, and the contour abscissa
// used in the remainder bound (k = 0 gives the uniform bound).
struct SmallZConfig {
    double alpha = 10.0;
    int n_terms = 41;
    double k_bound = 0.0;

    SmallZConfig() = default;
    SmallZConfig(double alpha_, int n_terms_, double k_bound_ = 0.0);
};

// Configuration for the sigma-asymptotic sum: N removed Gamma poles and M
// retained Taylor terms of the regular part.
struct SigmaAsymConfig {
    int n_poles = 5;
    int m_terms = 10;

    SigmaAsymConfig() = default;
    SigmaAsymConfig(int n_poles_, int m_terms_);
};

struct ApproxResult {
    complex_t value{0.0, 0.0};
    // Rigorous when available (small-z path: remainder bound plus truncation
    // tail); absent for the order-estimate-only sigma-asymptotic path.
    std::optional<double> error_bound;
};

// Convergent series
//   phi(z) ~ sum_n ((-z)^n / n!) e^{mu n + sigma^2 n^2/2}
//            * (1/2) erfc((mu + ln(z/alpha) + sigma^2 n) / (sqrt(2) sigma)),
// with every term formed through the pairing erfc(w) = erfcx(w) e^{-w^2} so
// the combined exponent is assembled analytically and no intermediate
// overflows.
ApproxResult small_z_series(const CutPlanePoint& z, const LognormalParams& p,
                            const SmallZConfig& cfg);

// Uniform remainder bound (1/(sqrt(2 pi) sigma)) exp(pi^2/(2 sigma^2) - alpha),
// valid on the whole cut plane.
double small_z_error_bound(double alpha, double sigma);

// Asymptotic sum in sigma: the erfc-paired first sum (alpha = 1) over the
// N+1 removed poles plus the Hermite-polynomial sum over the M+1 Taylor
// coefficients a_m of the regular part.
ApproxResult sigma_asymptotic(const CutPlanePoint& z, const LognormalParams& p,
                              const SigmaAsymConfig& cfg);

// Partial sums of the formal (everywhere-divergent) Taylor series
// sum_n (-z)^n / n! e^{mu n + sigma^2 n^2 / 2}. Overflow of a term is
// reported through overflow_index, not an exception; magnitudes collected
// so far are kept.
struct DivergenceWitness {
    std::vector<double> partial_sum_magnitudes;
    std::optional<int> overflow_index;
};
DivergenceWitness divergence_witness(complex_t z, const LognormalParams& p,
                                     int n_max);

// Smallest index past which the term ratio |z| e^{mu + sigma^2 (n + 1/2)}
// / (n + 1) stays above 1 (the series diverges for every z != 0).
int divergence_index(complex_t z, const LognormalParams& p);

namespace detail {

// One erfc-paired series term
//   (1/2) (-1)^n (alpha^n / n!) exp(-(v - ln alpha)^2 / (2 sigma^2))
//   * erfcx((v - ln alpha + sigma^2 n) / (sqrt(2) sigma)),  v = mu + ln z,
// reflected through erfc(w) = 2 - erfc(-w) when Re w < 0 so the scaled
// function is always evaluated at Re >= 0.
complex_t erfc_series_term(int n, complex_t v, double log_alpha, double sigma);

}  // namespace detail

}  // namespace lnlaplace

#endif
