#ifndef LNLAPLACE_LAPLACE_HPP
#define LNLAPLACE_LAPLACE_HPP

#include "lnlaplace/quadrature.hpp"
#include "lnlaplace/types.hpp"

namespace lnlaplace {

// Vertical contour s = k + i t, |t| <= T, trapezoidal step h, for the
// Mellin-Barnes representation of the transform. The Gamma poles must lie
// left of the contour (k > 0), and h <= T/50 keeps a minimum resolution.
struct ContourSpec {
    double k = 1.0;
    double T = 10.0;
    double h = 0.1;

    ContourSpec() = default;
    ContourSpec(double k_, double T_, double h_);

    // Truncation from the Gaussian-decay majorant exp(|Arg z| t - sigma^2
    // t^2 / 2): T is placed where the majorant is 1e-16 of its peak.
    static ContourSpec auto_for(double arg_z, const LognormalParams& p,
                                double k = 1.0);
};

// E[exp(-z X)] by adaptive quadrature of the defining integral after the
// substitution x = exp(u). Valid for Re z >= 0 (including z = 0 and the
// imaginary axis); the reference evaluator for every other method on that
// domain.
complex_t direct_transform(complex_t z, const LognormalParams& p,
                           double abs_tol = 1e-11);

// Phi(1, w; sigma) = integral over x of
//   exp(-e^x - x^2/(2 sigma^2) + w x / sigma^2),
// an entire function of w, by Filon quadrature with the slowly varying
// factor exp(-e^x - (x-a)^2/(2 sigma^2)) and oscillation exp(i b x /
// sigma^2), (a, b) = (Re w, Im w).
complex_t phi_big(complex_t w, double sigma);

// Analytic continuation to the cut plane:
//   phi(z) = (2 pi sigma^2)^(-1/2) exp(-(mu+ln z)^2/(2 sigma^2))
//            * Phi(1, mu + ln z; sigma),
// evaluated with the quadratic exponent folded into the integrand so no
// intermediate overflows.
complex_t continued_transform(const CutPlanePoint& z, const LognormalParams& p);

// Mellin-Barnes contour integral
//   phi(z) = (1/(2 pi)) integral Gamma(k+it)
//            exp(-(mu+ln z)(k+it) + sigma^2 (k+it)^2 / 2) dt,
// trapezoidal rule on the auto (or supplied) contour.
complex_t mellin_barnes_transform(const CutPlanePoint& z,
                                  const LognormalParams& p);
complex_t mellin_barnes_transform(const CutPlanePoint& z,
                                  const LognormalParams& p,
                                  const ContourSpec& c);

// phi and phi' from one contour pass; the derivative inserts the factor
// -s/z into the integrand (differentiation under the integral sign,
// justified by the Gaussian decay).
struct TransformDerivative {
    complex_t phi;
    complex_t dphi;
};
TransformDerivative mellin_barnes_with_derivative(const CutPlanePoint& z,
                                                  const LognormalParams& p);

// Closed-form Mellin transform M[phi; s] = Gamma(s) exp(-mu s + sigma^2 s^2
// / 2), Re s > 0. Validation target for the numerically computed Mellin
// integral of direct_transform.
complex_t mellin_closed_form(complex_t s, const LognormalParams& p);

// Characteristic function E[exp(i t X)] = phi(-i t) via the Mellin-Barnes
// contour at ln z = ln|t| - sgn(t) i pi/2.
complex_t characteristic_function(double t, const LognormalParams& p);

// Leipnik's (incorrect) contour expression for the characteristic function:
//   (1/(2 pi)) integral sin(pi s) Gamma(s)
//              exp(-(ln t + i pi/2) s + sigma^2 s^2 / 2) ds
// on the vertical contour at abscissa k, same trapezoidal scheme. The
// integrand is entire (sin(pi s) Gamma(s) = pi / Gamma(1-s)), so any real k
// is admissible. Kept to demonstrate that the expression tends to 0, not 1,
// as t -> 0.
complex_t leipnik_formula(double t, double sigma, double k);

namespace detail {

// Contour evaluation at an explicit value of ln z (callers: boundary
// points, the characteristic function, conjugate-symmetry tests).
complex_t mellin_barnes_at_log(complex_t log_z, const LognormalParams& p,
                               const ContourSpec& c,
                               complex_t* derivative = nullptr);

// Filon mesh for the continuation integrand, 2N+1 nodes biased toward the
// peak of the slowly varying factor.
FilonMesh continuation_mesh(double a, double sigma, int node_count = 3001);

}  // namespace detail

}  // namespace lnlaplace

#endif
