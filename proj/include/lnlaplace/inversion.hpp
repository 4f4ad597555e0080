#ifndef LNLAPLACE_INVERSION_HPP
#define LNLAPLACE_INVERSION_HPP

#include <string>
#include <vector>

#include "lnlaplace/types.hpp"

namespace lnlaplace {

// Independent lognormal components of a sum X = X_1 + ... + X_n.
struct ComponentList {
    std::vector<LognormalParams> components;

    ComponentList() = default;
    explicit ComponentList(std::vector<LognormalParams> c);
    size_t size() const noexcept { return components.size(); }
};

enum class BoundaryMethod {
    Auto,               // small-z series for sigma <= 0.5, Mellin-Barnes above
    ContinuationFilon,  // Phi-continuation with Filon quadrature
    MellinBarnes,
    SmallZSeries,
};

// Sampled boundary values phi(-t + i0) of the product transform on an
// ascending mesh with t_0 = 0 pinned to exactly 1.
struct BoundarySamples {
    std::vector<double> t_nodes;
    std::vector<complex_t> values;
    std::string method_tag;
};

// Density curve on x_nodes with the trapezoid mass over the curve.
struct DensityCurve {
    std::vector<double> x_nodes;
    std::vector<double> f_values;
    double mass_estimate = 0.0;
};

// Uniform nodes 0, step, 2 step, ..., t_max_sqrt, each squared: a mesh on
// [0, t_max_sqrt^2] that is finer near the origin. The count is padded to
// odd when needed (quadratic panels pair nodes).
std::vector<double> build_boundary_mesh(double t_max_sqrt, double step);

// Pointwise product over components of the selected boundary evaluator at
// the upper-limit points z = -t + i0. Evaluator errors are rethrown with
// the offending (component, t) attached.
BoundarySamples boundary_transform(const ComponentList& cl,
                                   const std::vector<double>& mesh,
                                   BoundaryMethod method = BoundaryMethod::Auto);

// Hankel-boundary inversion
//   f_X(x) = -(1/pi) integral_0^infty Im[phi(-t + i0)] e^{-t x} dt
// by per-panel quadratic interpolation of Im phi with the exact
// antiderivative of the panel polynomial against e^{-t x}. tail_tol guards
// against meshes that stop while |Im phi| e^{-t_max x} is non-negligible.
DensityCurve density_from_boundary(const BoundarySamples& bs,
                                   const std::vector<double>& x_nodes,
                                   double tail_tol = 1e-3);

// Density of the Thorin measure,
//   U(t) = (1/pi) Im[phi'(-t + i0) / phi(-t + i0)],
// with phi' from the Mellin-Barnes integrand (factor -s/z inserted).
double thorin_density(double t, const LognormalParams& p);

}  // namespace lnlaplace

#endif
