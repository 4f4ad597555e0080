#include "lnlaplace/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lnlaplace/errors.hpp"
#include "lnlaplace/special_functions.hpp"

namespace lnlaplace {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLog1e16 = 36.841361487904734;  // ln(1e16)

struct KahanComplex {
    complex_t sum{0.0, 0.0};
    complex_t comp{0.0, 0.0};
    void add(complex_t v) {
        const complex_t y = v - comp;
        const complex_t t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void check_finite(complex_t v, const std::string& op) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw OverflowError(op + ": result exceeds double range");
    }
}

std::string point_str(complex_t z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
           ")";
}

}  // namespace

ContourSpec::ContourSpec(double k_, double T_, double h_) : k(k_), T(T_), h(h_) {
    if (!(T > 0.0) || !(h > 0.0)) {
        throw std::invalid_argument("ContourSpec: require T > 0 and h > 0");
    }
    if (h > T / 50.0) {
        throw std::invalid_argument(
            "ContourSpec: resolution guard h <= T/50 violated");
    }
}

ContourSpec ContourSpec::auto_for(double arg_z, const LognormalParams& p,
                                  double k) {
    const double sigma = p.sigma;
    const double T = std::abs(arg_z) / (sigma * sigma) +
                     std::sqrt(2.0 * kLog1e16) / sigma;
    // The trapezoid converges like exp(-2 pi d / h) with strip width d = k
    // (nearest Gamma pole at s = 0), so the step shrinks with small k.
    const double h = std::min({0.5 * sigma, 0.1, T / 50.0, k / 4.2});
    return ContourSpec(k, T, h);
}

// ---------------------------------------------------------------------------
// Direct transform.
// ---------------------------------------------------------------------------

complex_t direct_transform(complex_t z, const LognormalParams& p,
                           double abs_tol) {
    if (z.real() < 0.0) {
        throw std::invalid_argument(
            "direct_transform: require Re z >= 0, got z = " + point_str(z));
    }
    const double mu = p.mu;
    const double sigma = p.sigma;
    // x = exp(u) removes the 1/x singularity and equalizes scales.
    const auto f = [&](double u) {
        const double g = (u - mu) / sigma;
        return std::exp(-z * std::exp(u) - complex_t(0.5 * g * g, 0.0));
    };
    const double half_width = 14.0 * sigma;
    const double norm = sigma * std::sqrt(2.0 * kPi);
    QuadratureResult q;
    try {
        q = adaptive_gk(f, mu - half_width, mu + half_width,
                        0.5 * abs_tol * norm);
    } catch (const QuadratureFailure& e) {
        throw QuadratureFailure("direct_transform(z=" + point_str(z) +
                                ", mu=" + std::to_string(mu) +
                                ", sigma=" + std::to_string(sigma) +
                                "): " + e.what());
    }
    const complex_t v = q.value / norm;
    check_finite(v, "direct_transform");
    return v;
}

// ---------------------------------------------------------------------------
// Continuation integrand mesh and Filon evaluation.
// ---------------------------------------------------------------------------

namespace detail {

FilonMesh continuation_mesh(double a, double sigma, int node_count) {
    if (node_count < 3 || node_count % 2 == 0) {
        throw std::invalid_argument("continuation_mesh: need an odd node count");
    }
    const double inv_s2 = 1.0 / (sigma * sigma);
    const auto log_g = [&](double x) {
        const double d = x - a;
        return -std::exp(x) - 0.5 * d * d * inv_s2;
    };
    // Peak of the slowly varying factor: sigma^2 e^x + x - a = 0.
    const auto froot = [&](double x) { return sigma * sigma * std::exp(x) + x - a; };
    double hi = a, lo = a - 1.0, step = 1.0;
    while (froot(lo) > 0.0) {
        step *= 2.0;
        lo = a - step;
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (froot(mid) > 0.0 ? hi : lo) = mid;
    }
    const double x_peak = 0.5 * (lo + hi);
    const double width = 1.0 / std::sqrt(std::exp(x_peak) + inv_s2);
    const double log_peak = log_g(x_peak);
    const double target = log_peak - 41.45;  // clip at 1e-18 of the peak

    // Bracket the clip points on both sides of the unimodal log_g.
    const auto clip = [&](double direction) {
        double inner = x_peak;
        double outer = x_peak + direction * 5.0 * width;
        while (log_g(outer) > target) {
            inner = outer;
            outer += direction * 10.0 * width;
        }
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (inner + outer);
            (log_g(mid) > target ? inner : outer) = mid;
        }
        return outer;
    };
    const double x_lo = clip(-1.0);
    const double x_hi = clip(+1.0);

    // Node placement by quantiles of a blend of uniform mass and two
    // Gaussians at the peak (widths s and 3s): dense where the integrand
    // curves, with a floor of resolution in the tails.
    const auto normal_cdf = [](double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); };
    const auto blend_cdf = [&](double x) {
        const auto trunc = [&](double s) {
            const double c_lo = normal_cdf((x_lo - x_peak) / s);
            const double c_hi = normal_cdf((x_hi - x_peak) / s);
            return (normal_cdf((x - x_peak) / s) - c_lo) / (c_hi - c_lo);
        };
        return 0.15 * (x - x_lo) / (x_hi - x_lo) + 0.55 * trunc(width) +
               0.30 * trunc(3.0 * width);
    };
    const int grid_n = 4096;
    std::vector<double> gx(grid_n + 1), gw(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) {
        gx[static_cast<size_t>(i)] = x_lo + (x_hi - x_lo) * i / grid_n;
        gw[static_cast<size_t>(i)] = blend_cdf(gx[static_cast<size_t>(i)]);
    }
    std::vector<double> nodes(static_cast<size_t>(node_count));
    nodes.front() = x_lo;
    nodes.back() = x_hi;
    size_t cursor = 0;
    for (int j = 1; j < node_count - 1; ++j) {
        const double u = static_cast<double>(j) / (node_count - 1);
        while (cursor + 1 < gw.size() && gw[cursor + 1] < u) ++cursor;
        const double w0 = gw[cursor], w1 = gw[cursor + 1];
        const double frac = (u - w0) / std::max(w1 - w0, 1e-300);
        double x = gx[cursor] + frac * (gx[cursor + 1] - gx[cursor]);
        x = std::max(x, nodes[static_cast<size_t>(j - 1)] +
                            1e-12 * (x_hi - x_lo));
        nodes[static_cast<size_t>(j)] = x;
    }

    std::vector<double> samples(nodes.size());
    double mass = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        samples[i] = std::exp(log_g(nodes[i]) - log_peak);
        if (i > 0) {
            mass += 0.5 * (samples[i] + samples[i - 1]) * (nodes[i] - nodes[i - 1]);
        }
    }
    // Tail estimate: boundary sample over the local decay rate.
    const double rate_lo = (a - x_lo) * inv_s2 - std::exp(x_lo);
    const double rate_hi = std::exp(x_hi) + (x_hi - a) * inv_s2;
    const double tail = samples.front() / std::max(rate_lo, 1e-3) +
                        samples.back() / std::max(rate_hi, 1e-3);
    if (tail > 1e-13 * mass) {
        throw MeshTooNarrow(
            "continuation_mesh: endpoint tail estimate exceeds 1e-13 of the "
            "accumulated integral (a=" + std::to_string(a) +
            ", sigma=" + std::to_string(sigma) + ")");
    }
    // Samples are normalized by the peak value; callers fold exp(log_peak)
    // back into their outer constant. from_samples keeps the raw values.
    for (double& s : samples) s *= std::exp(log_peak);
    return FilonMesh::from_samples(std::move(nodes), std::move(samples));
}

}  // namespace detail

complex_t phi_big(complex_t w, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("phi_big: require sigma > 0");
    const double a = w.real();
    const double scale_exp = 0.5 * a * a / (sigma * sigma);
    if (scale_exp > 709.0) {
        throw OverflowError("phi_big: exp(a^2/(2 sigma^2)) overflows at w = " +
                            point_str(w));
    }
    const FilonMesh mesh = detail::continuation_mesh(a, sigma);
    const complex_t integral =
        mesh.integrate_oscillatory(w.imag() / (sigma * sigma));
    const complex_t v = std::exp(scale_exp) * integral;
    check_finite(v, "phi_big");
    return v;
}

complex_t continued_transform(const CutPlanePoint& z,
                              const LognormalParams& p) {
    const complex_t w = p.mu + z.log();
    const double a = w.real();
    const double b = w.imag();
    const double s2 = p.sigma * p.sigma;
    // phi = (2 pi sigma^2)^(-1/2) exp((b^2 - 2 i a b)/(2 sigma^2))
    //       * integral of gtilde(x) exp(i (b/sigma^2) x) dx,
    // gtilde = exp(-e^x - (x-a)^2/(2 sigma^2)): the quadratic prefactor is
    // folded into the integrand, so nothing overflows for moderate sigma.
    const complex_t c_exp = complex_t(b * b, -2.0 * a * b) / (2.0 * s2);
    if (c_exp.real() > 709.0) {
        throw OverflowError(
            "continued_transform: boundary prefactor exp(pi^2/(2 sigma^2)) "
            "overflows for sigma = " + std::to_string(p.sigma));
    }
    const FilonMesh mesh = detail::continuation_mesh(a, p.sigma);
    const complex_t integral = mesh.integrate_oscillatory(b / s2);
    const complex_t v =
        std::exp(c_exp) * integral / std::sqrt(2.0 * kPi * s2);
    check_finite(v, "continued_transform");
    return v;
}

// ---------------------------------------------------------------------------
// Mellin-Barnes contour evaluation.
// ---------------------------------------------------------------------------

namespace detail {

complex_t mellin_barnes_at_log(complex_t log_z, const LognormalParams& p,
                               const ContourSpec& c, complex_t* derivative) {
    if (!(c.k > 0.0)) {
        throw ContourError(
            "mellin_barnes: contour abscissa must satisfy k > 0, got k = " +
            std::to_string(c.k));
    }
    const double theta = log_z.imag();
    const double s2 = p.sigma * p.sigma;
    // Decay majorant exp(|theta| t - sigma^2 t^2 / 2) must be 1e-16 of its
    // peak at |t| = T.
    const double peak_log = 0.5 * theta * theta / s2;
    if (std::abs(theta) * c.T - 0.5 * s2 * c.T * c.T >
        peak_log - kLog1e16 + 1e-6) {
        throw TruncationError(
            "mellin_barnes: truncation T = " + std::to_string(c.T) +
            " does not satisfy the Gaussian-decay majorant");
    }
    const long n = std::lround(c.T / c.h);
    if (n > 2000000) {
        throw TruncationError(
            "mellin_barnes: node budget exceeded (T/h = " + std::to_string(n) +
            ")");
    }
    const complex_t w = p.mu + log_z;
    const complex_t inv_z = derivative ? std::exp(-log_z) : complex_t(0.0, 0.0);
    KahanComplex acc, acc_d;
    complex_t f_end_sum(0.0, 0.0);
    complex_t fd_end_sum(0.0, 0.0);
    for (long j = -n; j <= n; ++j) {
        const complex_t s(c.k, j * c.h);
        const complex_t expo = log_gamma_complex(s) - w * s + 0.5 * s2 * s * s;
        const complex_t f = std::exp(expo);
        acc.add(f);
        if (derivative) acc_d.add(f * (-s) * inv_z);
        if (j == -n || j == n) {
            f_end_sum += f;
            if (derivative) fd_end_sum += f * (-s) * inv_z;
        }
    }
    const double scale = c.h / (2.0 * kPi);
    if (derivative) {
        *derivative = scale * (acc_d.sum - 0.5 * fd_end_sum);
        check_finite(*derivative, "mellin_barnes derivative");
    }
    const complex_t v = scale * (acc.sum - 0.5 * f_end_sum);
    check_finite(v, "mellin_barnes_transform");
    return v;
}

}  // namespace detail

complex_t mellin_barnes_transform(const CutPlanePoint& z,
                                  const LognormalParams& p,
                                  const ContourSpec& c) {
    return detail::mellin_barnes_at_log(z.log(), p, c, nullptr);
}

complex_t mellin_barnes_transform(const CutPlanePoint& z,
                                  const LognormalParams& p) {
    const complex_t lz = z.log();
    return detail::mellin_barnes_at_log(lz, p,
                                        ContourSpec::auto_for(lz.imag(), p),
                                        nullptr);
}

TransformDerivative mellin_barnes_with_derivative(const CutPlanePoint& z,
                                                  const LognormalParams& p) {
    const complex_t lz = z.log();
    TransformDerivative out;
    out.phi = detail::mellin_barnes_at_log(
        lz, p, ContourSpec::auto_for(lz.imag(), p), &out.dphi);
    return out;
}

complex_t mellin_closed_form(complex_t s, const LognormalParams& p) {
    if (!(s.real() > 0.0)) {
        throw std::invalid_argument("mellin_closed_form: require Re s > 0");
    }
    const complex_t v =
        gamma_complex(s) * std::exp(-p.mu * s + 0.5 * p.sigma * p.sigma * s * s);
    check_finite(v, "mellin_closed_form");
    return v;
}

complex_t characteristic_function(double t, const LognormalParams& p) {
    if (t == 0.0 || !std::isfinite(t)) {
        throw std::invalid_argument("characteristic_function: require t != 0");
    }
    // phi_char(t) = phi(-i t): ln z = ln|t| - sgn(t) i pi/2.
    const double sgn = (t > 0.0) ? 1.0 : -1.0;
    const complex_t log_z(std::log(std::abs(t)), -sgn * kPi / 2.0);
    return detail::mellin_barnes_at_log(
        log_z, p, ContourSpec::auto_for(log_z.imag(), p), nullptr);
}

complex_t leipnik_formula(double t, double sigma, double k) {
    if (!(t > 0.0)) throw std::invalid_argument("leipnik_formula: require t > 0");
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("leipnik_formula: require sigma > 0");
    }
    const double s2 = sigma * sigma;
    // sin(pi s) Gamma(s) = pi / Gamma(1 - s): entire, so the trapezoid nodes
    // may cross the Gamma poles freely and any real k is admissible.
    const double T = kPi / s2 + 10.6 / sigma;
    const double h = std::min({0.5 * sigma, 0.1, T / 50.0});
    const long n = std::lround(T / h);
    if (n > 2000000) {
        throw TruncationError("leipnik_formula: node budget exceeded");
    }
    const complex_t lt(std::log(t), kPi / 2.0);  // ln t + i pi/2
    KahanComplex acc;
    complex_t f_end_sum(0.0, 0.0);
    for (long j = -n; j <= n; ++j) {
        const complex_t s(k, j * h);
        const complex_t f = kPi * recip_gamma_complex(1.0 - s) *
                            std::exp(-lt * s + 0.5 * s2 * s * s);
        acc.add(f);
        if (j == -n || j == n) f_end_sum += f;
    }
    const complex_t v = (h / (2.0 * kPi)) * (acc.sum - 0.5 * f_end_sum);
    check_finite(v, "leipnik_formula");
    return v;
}

}  // namespace lnlaplace
