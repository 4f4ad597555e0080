#include "oracles.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

#include "lnlaplace/laplace.hpp"
#include "lnlaplace/quadrature.hpp"
#include "lnlaplace/types.hpp"

namespace oracles {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

using mp50 = boost::multiprecision::cpp_bin_float_50;
using mp100 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>>;

template <typename R>
R pi_mp() {
    return 2 * acos(R(0));
}

// Minimal complex arithmetic over a multiprecision real type.
template <typename R>
struct Complex {
    R re{0}, im{0};

    Complex() = default;
    Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(complex_t z) : re(z.real()), im(z.imag()) {}

    complex_t to_double() const {
        return complex_t(static_cast<double>(re), static_cast<double>(im));
    }
};

template <typename R>
Complex<R> operator+(const Complex<R>& a, const Complex<R>& b) {
    return {a.re + b.re, a.im + b.im};
}
template <typename R>
Complex<R> operator-(const Complex<R>& a, const Complex<R>& b) {
    return {a.re - b.re, a.im - b.im};
}
template <typename R>
Complex<R> operator*(const Complex<R>& a, const Complex<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <typename R>
Complex<R> operator*(const R& c, const Complex<R>& a) {
    return {c * a.re, c * a.im};
}
template <typename R>
Complex<R> operator/(const Complex<R>& a, const Complex<R>& b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <typename R>
R abs_mp(const Complex<R>& a) {
    return sqrt(a.re * a.re + a.im * a.im);
}
template <typename R>
Complex<R> exp_mp(const Complex<R>& a) {
    const R m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}
template <typename R>
Complex<R> log_mp(const Complex<R>& a) {
    return {log(abs_mp(a)), atan2(a.im, a.re)};
}
template <typename R>
Complex<R> pow_mp(const Complex<R>& a, const Complex<R>& b) {
    return exp_mp(b * log_mp(a));
}

mp50 zeta_mp_full(int k) {
    // Hasse: zeta(s) (1 - 2^(1-s)) = sum_n 2^-(n+1) sum_j (-1)^j C(n,j) (j+1)^-s
    mp50 total(0);
    mp50 half_pow = mp50(1) / 2;
    for (int n = 0; n < 220; ++n) {
        mp50 inner(0);
        mp50 binom(1);
        for (int j = 0; j <= n; ++j) {
            const mp50 term = binom * pow(mp50(j + 1), -k);
            inner += (j % 2 == 0) ? term : -term;
            binom = binom * (n - j) / (j + 1);
        }
        total += half_pow * inner;
        half_pow /= 2;
    }
    return total / (1 - pow(mp50(2), 1 - k));
}

}  // namespace

complex_t gamma_mp(complex_t s_in) {
    using C = Complex<mp50>;
    const int a = 64;
    // Spouge: Gamma(z+1) = (z+a)^(z+1/2) e^-(z+a) [c0 + sum_k c_k/(z+k)],
    // c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!. Here z = s - 1.
    const C z = C(s_in) - C{mp50(1), mp50(0)};
    C sum{sqrt(2 * pi_mp<mp50>()), mp50(0)};
    mp50 factorial(1);
    for (int k = 1; k < a; ++k) {
        if (k > 1) factorial *= (k - 1);
        const mp50 ck = ((k % 2 == 1) ? 1 : -1) *
                        pow(mp50(a - k), mp50(k) - mp50(1) / 2) *
                        exp(mp50(a - k)) / factorial;
        sum = sum + C{ck, mp50(0)} / (z + C{mp50(k), mp50(0)});
    }
    const C za = z + C{mp50(a), mp50(0)};
    const C minus_za{-za.re, -za.im};
    const C gamma_s =
        pow_mp(za, z + C{mp50(1) / 2, mp50(0)}) * exp_mp(minus_za) * sum;
    return gamma_s.to_double();
}

double zeta_mp(int k) {
    if (k < 2) throw std::invalid_argument("zeta_mp: k >= 2");
    return static_cast<double>(zeta_mp_full(k));
}

std::vector<double> gamma_taylor_mp(int j_max) {
    const int order = j_max + 1;
    std::vector<mp50> g(static_cast<size_t>(order) + 1, mp50(0));
    g[1] = -mp50("0.57721566490153286060651209008240243104215933593992");
    for (int k = 2; k <= order; ++k) {
        const mp50 zk = zeta_mp_full(k);
        g[static_cast<size_t>(k)] = ((k % 2 == 0) ? zk : -zk) / k;
    }
    std::vector<mp50> c(static_cast<size_t>(order) + 1, mp50(0));
    c[0] = 1;
    for (int i = 1; i <= order; ++i) {
        mp50 acc(0);
        for (int k = 1; k <= i; ++k) {
            acc += k * g[static_cast<size_t>(k)] * c[static_cast<size_t>(i - k)];
        }
        c[static_cast<size_t>(i)] = acc / i;
    }
    std::vector<double> b(static_cast<size_t>(j_max) + 1);
    for (int j = 0; j <= j_max; ++j) {
        b[static_cast<size_t>(j)] =
            static_cast<double>(c[static_cast<size_t>(j) + 1]);
    }
    return b;
}

namespace {

template <typename R>
Complex<R> erf_series(const Complex<R>& w) {
    // erf(w) = (2/sqrt(pi)) sum_n (-1)^n w^(2n+1) / (n! (2n+1))
    const Complex<R> w2 = w * w;
    Complex<R> term = w;  // (-1)^n w^(2n+1) / n!
    Complex<R> sum{R(0), R(0)};
    for (int n = 0; n < 600; ++n) {
        const Complex<R> contrib = (R(1) / (2 * n + 1)) * term;
        sum = sum + contrib;
        if (abs_mp(contrib) < pow(R(10), -80) * (abs_mp(sum) + 1)) break;
        term = (R(-1) / (n + 1)) * (term * w2);
    }
    return (2 / sqrt(pi_mp<R>())) * sum;
}

}  // namespace

complex_t erfc_mp(complex_t w) {
    using C = Complex<mp100>;
    const C one{mp100(1), mp100(0)};
    return (one - erf_series(C(w))).to_double();
}

complex_t erfcx_mp(complex_t w) {
    using C = Complex<mp100>;
    const C one{mp100(1), mp100(0)};
    const C wc(w);
    return (exp_mp(wc * wc) * (one - erf_series(wc))).to_double();
}

complex_t erfcx_asymptotic(complex_t w) {
    if (!(w.real() > 0.0) || std::abs(w) < 6.0) {
        throw std::invalid_argument("erfcx_asymptotic: need Re w > 0, |w| >= 6");
    }
    // erfcx(w) ~ (1/(w sqrt(pi))) sum_k (-1)^k (2k-1)!! / (2 w^2)^k
    const complex_t inv_2w2 = 1.0 / (2.0 * w * w);
    complex_t term(1.0, 0.0);
    complex_t sum(1.0, 0.0);
    double prev_mag = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= -static_cast<double>(2 * k - 1) * inv_2w2;
        if (std::abs(term) > prev_mag) break;  // smallest term reached
        prev_mag = std::abs(term);
        sum += term;
        if (prev_mag < 1e-20) break;
    }
    return sum / (w * std::sqrt(kPi));
}

complex_t characteristic_direct(double t, const LognormalParams& p) {
    if (t == 0.0) throw std::invalid_argument("characteristic_direct: t != 0");
    const double x_lo = std::exp(p.mu - 12.0 * p.sigma);
    const double x_hi = std::exp(p.mu + 12.0 * p.sigma);
    const auto f = [&](double x) {
        return std::exp(complex_t(0.0, t * x)) * p.density(x);
    };
    // Half-period panels keep each Gauss-Kronrod application non-oscillatory.
    const double panel = kPi / (2.0 * std::abs(t));
    complex_t sum(0.0, 0.0);
    complex_t comp(0.0, 0.0);
    double a = x_lo;
    while (a < x_hi) {
        const double b = std::min(a + panel, x_hi);
        const complex_t v = lnlaplace::adaptive_gk(f, a, b, 1e-13, 2000).value;
        const complex_t y = v - comp;
        const complex_t s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        a = b;
    }
    return sum;
}

complex_t mellin_numeric(complex_t s, const LognormalParams& p) {
    // integral z^(s-1) phi(z) dz = integral exp(s v) phi(e^v) dv, z = e^v.
    const auto f = [&](double v) {
        return std::exp(s * v) *
               lnlaplace::direct_transform(std::exp(v), p, 1e-12);
    };
    return lnlaplace::adaptive_gk(f, -40.0, 9.0, 1e-9, 4000).value;
}

double convolution_density(double x, const LognormalParams& p1,
                           const LognormalParams& p2) {
    if (!(x > 0.0)) return 0.0;
    const auto f = [&](double u) {
        return complex_t(p1.density(u) * p2.density(x - u), 0.0);
    };
    return lnlaplace::adaptive_gk(f, 0.0, x, 1e-10, 20000).value.real();
}

complex_t boundary_derivative_fd(double t, const LognormalParams& p) {
    using lnlaplace::CutPlanePoint;
    const auto phi = [&](double eps) {
        if (eps == 0.0) {
            return lnlaplace::continued_transform(CutPlanePoint::boundary(t), p);
        }
        return lnlaplace::continued_transform(
            CutPlanePoint::interior(complex_t(-t, eps)), p);
    };
    // One-sided vertical difference into the upper half plane:
    // f'(z) = (-3 f(z) + 4 f(z+ih) - f(z+2ih)) / (2ih) + O(h^2),
    // Richardson-extrapolated over h and h/2.
    const auto one_sided = [&](double h) {
        const complex_t f0 = phi(0.0);
        const complex_t f1 = phi(h);
        const complex_t f2 = phi(2.0 * h);
        return (-3.0 * f0 + 4.0 * f1 - f2) / complex_t(0.0, 2.0 * h);
    };
    const double h = 1e-4;
    const complex_t d1 = one_sided(h);
    const complex_t d2 = one_sided(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace oracles
