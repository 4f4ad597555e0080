#ifndef LNLAPLACE_QUADRATURE_HPP
#define LNLAPLACE_QUADRATURE_HPP

#include <array>
#include <functional>
#include <vector>

#include "lnlaplace/types.hpp"

namespace lnlaplace {

struct QuadratureResult {
    complex_t value;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod (7,15) bisection on [a, b] for complex-valued
// integrands. Stops when the summed error estimate drops below abs_tol or
// every interval is resolved to rounding level; throws QuadratureFailure
// when the interval budget is exhausted first. Deterministic: the result
// is accumulated in interval order.
QuadratureResult adaptive_gk(const std::function<complex_t(double)>& f,
                             double a, double b, double abs_tol,
                             int max_intervals = 100000);

// Moments M_k = integral_0^L u^k exp(kappa u) du for k = 0, 1, 2.
// Closed antiderivatives for |kappa L| > 1/2, else a series fallback run to
// machine epsilon (the closed forms cancel catastrophically as kappa -> 0).
std::array<complex_t, 3> exp_kernel_moments(complex_t kappa, double L);

// Mesh of 2N+1 ordered nodes with a quadratic Lagrange fit per panel
// [x_{2j}, x_{2j+2}], exact at the three panel samples. Panel coefficients
// are stored in the shifted basis u = x - x_{2j}.
class FilonMesh {
  public:
    static FilonMesh from_samples(std::vector<double> nodes,
                                  std::vector<double> samples);

    // integral of p(x) exp(i t x) dx over the mesh, p the panel quadratics.
    complex_t integrate_oscillatory(double t) const;

    // integral of p(x) exp(-r x) dx over the mesh (r >= 0).
    double integrate_exponential(double r) const;

    // Piecewise-quadratic evaluation (panel lookup by bisection).
    double evaluate(double x) const;

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    size_t panel_count() const noexcept { return coeffs_.size(); }
    std::array<double, 3> panel_coeffs(size_t j) const { return coeffs_.at(j); }

  private:
    FilonMesh() = default;
    std::vector<double> nodes_;
    std::vector<double> samples_;
    std::vector<std::array<double, 3>> coeffs_;  // c0 + c1 u + c2 u^2
};

}  // namespace lnlaplace

#endif
