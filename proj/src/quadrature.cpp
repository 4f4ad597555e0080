#include "lnlaplace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "lnlaplace/errors.hpp"

namespace lnlaplace {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    complex_t value;
    double error;
};

Segment gk15(const std::function<complex_t(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const complex_t f_center = f(center);
    complex_t result_g = kWg[3] * f_center;
    complex_t result_k = kWgk[7] * f_center;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<size_t>(j)];
        const complex_t f_sum = f(center - dx) + f(center + dx);
        result_k += kWgk[static_cast<size_t>(j)] * f_sum;
        if (j % 2 == 1) {
            result_g += kWg[static_cast<size_t>(j / 2)] * f_sum;
        }
    }
    result_k *= half;
    result_g *= half;
    return Segment{a, b, result_k, std::abs(result_k - result_g)};
}

}  // namespace

QuadratureResult adaptive_gk(const std::function<complex_t(double)>& f,
                             double a, double b, double abs_tol,
                             int max_intervals) {
    if (!(b > a)) throw std::invalid_argument("adaptive_gk: require b > a");
    auto worse = [](const Segment& x, const Segment& y) {
        return x.error < y.error;
    };
    std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(
        worse);
    heap.push(gk15(f, a, b));
    long evals = 15;
    double total_error = heap.top().error;
    int intervals = 1;
    // Stop refining an interval once its estimate is at rounding level for
    // its own magnitude; further bisection only accumulates noise.
    auto at_floor = [](const Segment& s) {
        return s.error <= 1e-16 * (std::abs(s.value) + 1e-300) ||
               (s.b - s.a) < 1e-14 * (std::abs(s.a) + std::abs(s.b) + 1.0);
    };
    while (total_error > abs_tol) {
        if (at_floor(heap.top())) break;
        if (intervals >= max_intervals) {
            throw QuadratureFailure(
                "adaptive_gk: interval budget exhausted (tol=" +
                std::to_string(abs_tol) + ", err=" +
                std::to_string(total_error) + ")");
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        evals += 30;
        ++intervals;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Deterministic accumulation: drain and sum in interval order.
    std::vector<Segment> segments;
    segments.reserve(static_cast<size_t>(intervals));
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    complex_t sum(0.0, 0.0);
    complex_t comp(0.0, 0.0);  // Kahan compensation
    double err = 0.0;
    for (const Segment& s : segments) {
        const complex_t y = s.value - comp;
        const complex_t t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += s.error;
    }
    return QuadratureResult{sum, err, evals};
}

std::array<complex_t, 3> exp_kernel_moments(complex_t kappa, double L) {
    const complex_t y = kappa * L;
    std::array<complex_t, 3> m;
    if (std::abs(y) > 0.5) {
        const complex_t e = std::exp(y);
        m[0] = (e - 1.0) / kappa;
        m[1] = (e * (y - 1.0) + 1.0) / (kappa * kappa);
        m[2] = (e * (y * y - 2.0 * y + 2.0) - 2.0) / (kappa * kappa * kappa);
        return m;
    }
    // M_k = L^{k+1} sum_n y^n / (n! (n+k+1)), run to machine epsilon.
    for (int k = 0; k < 3; ++k) {
        complex_t term(1.0, 0.0);
        complex_t sum = term / static_cast<double>(k + 1);
        for (int n = 1; n < 40; ++n) {
            term *= y / static_cast<double>(n);
            const complex_t contrib = term / static_cast<double>(n + k + 1);
            sum += contrib;
            if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
        }
        m[static_cast<size_t>(k)] = sum * std::pow(L, k + 1);
    }
    return m;
}

FilonMesh FilonMesh::from_samples(std::vector<double> nodes,
                                  std::vector<double> samples) {
    if (nodes.size() != samples.size()) {
        throw std::invalid_argument("FilonMesh: node/sample size mismatch");
    }
    if (nodes.size() < 3 || nodes.size() % 2 == 0) {
        throw std::invalid_argument(
            "FilonMesh: require an odd node count of at least 3");
    }
    for (size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw std::invalid_argument("FilonMesh: nodes must be ascending");
        }
    }
    FilonMesh mesh;
    mesh.nodes_ = std::move(nodes);
    mesh.samples_ = std::move(samples);
    const size_t n_panels = (mesh.nodes_.size() - 1) / 2;
    mesh.coeffs_.resize(n_panels);
    for (size_t j = 0; j < n_panels; ++j) {
        const double x0 = mesh.nodes_[2 * j];
        const double u1 = mesh.nodes_[2 * j + 1] - x0;
        const double u2 = mesh.nodes_[2 * j + 2] - x0;
        const double g0 = mesh.samples_[2 * j];
        const double g1 = mesh.samples_[2 * j + 1];
        const double g2 = mesh.samples_[2 * j + 2];
        // Newton divided differences, converted to monomials in u = x - x0.
        const double d1 = (g1 - g0) / u1;
        const double d2 = ((g2 - g0) / u2 - d1) / (u2 - u1);
        mesh.coeffs_[j] = {g0, d1 - d2 * u1, d2};
    }
    return mesh;
}

complex_t FilonMesh::integrate_oscillatory(double t) const {
    complex_t sum(0.0, 0.0);
    const complex_t kappa(0.0, t);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        const double x0 = nodes_[2 * j];
        const double L = nodes_[2 * j + 2] - x0;
        const auto m = exp_kernel_moments(kappa, L);
        const auto& c = coeffs_[j];
        const complex_t panel = c[0] * m[0] + c[1] * m[1] + c[2] * m[2];
        sum += std::exp(complex_t(0.0, t * x0)) * panel;
    }
    return sum;
}

double FilonMesh::integrate_exponential(double r) const {
    double sum = 0.0;
    const complex_t kappa(-r, 0.0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        const double x0 = nodes_[2 * j];
        const double L = nodes_[2 * j + 2] - x0;
        const auto m = exp_kernel_moments(kappa, L);
        const auto& c = coeffs_[j];
        const double panel =
            c[0] * m[0].real() + c[1] * m[1].real() + c[2] * m[2].real();
        sum += std::exp(-r * x0) * panel;
    }
    return sum;
}

double FilonMesh::evaluate(double x) const {
    if (x < nodes_.front() || x > nodes_.back()) {
        throw std::invalid_argument("FilonMesh::evaluate: x outside the mesh");
    }
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    size_t idx = static_cast<size_t>(it - nodes_.begin());
    if (idx > 0) --idx;
    size_t panel = std::min(idx / 2, coeffs_.size() - 1);
    const double u = x - nodes_[2 * panel];
    const auto& c = coeffs_[panel];
    return c[0] + u * (c[1] + u * c[2]);
}

}  // namespace lnlaplace
