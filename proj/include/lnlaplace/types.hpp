#ifndef LNLAPLACE_TYPES_HPP
#define LNLAPLACE_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace lnlaplace {

using complex_t = std::complex<double>;

// Location/dispersion of one lognormal component on the log scale.
struct LognormalParams {
    double mu = 0.0;
    double sigma = 1.0;

    LognormalParams() = default;
    LognormalParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
        if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
            throw std::invalid_argument(
                "LognormalParams: require finite mu and sigma > 0, got mu=" +
                std::to_string(mu_) + " sigma=" + std::to_string(sigma_));
        }
    }

    // Closed-form density of lnN(mu, sigma^2) at x > 0.
    double density(double x) const {
        if (!(x > 0.0)) return 0.0;
        const double u = (std::log(x) - mu) / sigma;
        return std::exp(-0.5 * u * u) / (x * sigma * std::sqrt(2.0 * M_PI));
    }
};

// A complex argument guaranteed off the branch cut (-inf, 0], with an
// explicit flag for upper-limit boundary points z = -t + i*0, t > 0.
// The principal logarithm is used throughout; boundary points carry
// Arg z = +pi exactly.
class CutPlanePoint {
  public:
    static CutPlanePoint interior(complex_t z) {
        if (z.imag() == 0.0 && z.real() <= 0.0) {
            throw std::invalid_argument(
                "CutPlanePoint::interior: z on branch cut or at origin");
        }
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("CutPlanePoint::interior: non-finite z");
        }
        return CutPlanePoint(z, false);
    }

    // z = -t + i*0 approached from the upper half plane, t > 0.
    static CutPlanePoint boundary(double t) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument(
                "CutPlanePoint::boundary: require t > 0, got t=" +
                std::to_string(t));
        }
        return CutPlanePoint(complex_t(-t, 0.0), true);
    }

    complex_t value() const noexcept { return value_; }
    bool is_boundary() const noexcept { return boundary_; }

    // Principal branch; Arg = +pi exactly for boundary points.
    complex_t log() const {
        if (boundary_) return complex_t(std::log(-value_.real()), M_PI);
        return std::log(value_);
    }

    CutPlanePoint conj() const {
        if (boundary_) {
            throw std::invalid_argument(
                "CutPlanePoint::conj: conjugate of an upper-limit point lies "
                "below the cut");
        }
        return CutPlanePoint(std::conj(value_), false);
    }

  private:
    CutPlanePoint(complex_t v, bool b) : value_(v), boundary_(b) {}
    complex_t value_;
    bool boundary_;
};

}  // namespace lnlaplace

#endif
