#include "lnlaplace/special_functions.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <limits>

#include "lnlaplace/errors.hpp"

namespace lnlaplace {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// ---------------------------------------------------------------------------
// Lanczos approximation, N=13, g=6.024680040776729583740234375.
// Rational coefficients in ascending order; the denominator is the rising
// factorial s(s+1)...(s+11), so the rational part carries the poles.
// ---------------------------------------------------------------------------
constexpr double kLanczosG = 6.024680040776729583740234375;

constexpr std::array<double, 13> kLanczosNum = {
    23531376880.410759688572007674451636754734,
    42919803642.649098768957899047001988850926,
    35711959237.355668049440185451547166705960,
    17921034426.037209699919755754458931112671,
    6039542586.3520280050642916443072979210699,
    1439720407.3117216736632230727949123939715,
    248874557.86205415651146038641322942321632,
    31426415.585400194380614231628318205362874,
    2876370.6289353724412254090516208496135991,
    186056.26539522349504029498971604569928220,
    8071.6720023658162106380029022722506138218,
    210.82427775157934587250973392071336271166,
    2.5066282746310002701649081771338373386264,
};

constexpr std::array<double, 13> kLanczosDen = {
    0.0,      39916800.0, 120543840.0, 150917976.0, 105258076.0,
    45995730.0, 13339535.0, 2637558.0,  357423.0,    32670.0,
    1925.0,   66.0,       1.0,
};

complex_t lanczos_sum(complex_t s) {
    complex_t num(0.0, 0.0);
    complex_t den(0.0, 0.0);
    for (int i = 12; i >= 0; --i) {
        num = num * s + kLanczosNum[static_cast<size_t>(i)];
        den = den * s + kLanczosDen[static_cast<size_t>(i)];
    }
    return num / den;
}

bool near_nonpositive_integer(complex_t s, double tol) {
    if (s.real() > 0.5) return false;
    const double r = std::nearbyint(s.real());
    return std::abs(s.real() - r) <= tol && std::abs(s.imag()) <= tol;
}

void check_finite(complex_t v, const char* op) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw OverflowError(std::string(op) + ": result exceeds double range");
    }
}

}  // namespace

complex_t log_gamma_complex(complex_t s) {
    if (near_nonpositive_integer(s, 1e-300)) {
        throw PoleError("log_gamma_complex: pole at s = " +
                        std::to_string(s.real()));
    }
    if (s.real() >= 0.5) {
        const complex_t zgh = s + (kLanczosG - 0.5);
        return (s - 0.5) * std::log(zgh) - zgh + std::log(lanczos_sum(s));
    }
    // Reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1-s),
    // with log sin evaluated in exponential form to avoid overflow for
    // large |Im s|. Branch is immaterial under exp().
    const complex_t one_minus = 1.0 - s;
    complex_t log_sin;
    const double y = s.imag();
    if (std::abs(y) < 20.0) {
        log_sin = std::log(std::sin(kPi * s));
    } else {
        // sin(pi s) = -exp(-i pi s) (1 - exp(2 i pi s)) / (2 i), Im s > 0
        const complex_t i_unit(0.0, 1.0);
        if (y > 0) {
            log_sin = -i_unit * kPi * s +
                      std::log(1.0 - std::exp(2.0 * i_unit * kPi * s)) +
                      std::log(i_unit / 2.0);
        } else {
            log_sin = i_unit * kPi * s +
                      std::log(1.0 - std::exp(-2.0 * i_unit * kPi * s)) +
                      std::log(-i_unit / 2.0);
        }
    }
    return std::log(kPi) - log_sin - log_gamma_complex(one_minus);
}

complex_t gamma_complex(complex_t s) {
    if (near_nonpositive_integer(s, 1e-300)) {
        throw PoleError("gamma_complex: pole at s = " + std::to_string(s.real()));
    }
    if (s.real() >= 0.5) {
        const complex_t zgh = s + (kLanczosG - 0.5);
        const complex_t v =
            std::exp((s - 0.5) * std::log(zgh) - zgh) * lanczos_sum(s);
        check_finite(v, "gamma_complex");
        return v;
    }
    const complex_t v = kPi / (std::sin(kPi * s) * gamma_complex(1.0 - s));
    check_finite(v, "gamma_complex");
    return v;
}

complex_t recip_gamma_complex(complex_t s) {
    // Shift into Re >= 1 with the recurrence 1/Gamma(s) = prod(s+i)/Gamma(s+m);
    // entire, with exact zeros at nonpositive integers.
    complex_t prefactor(1.0, 0.0);
    while (s.real() < 1.0) {
        prefactor *= s;
        s += 1.0;
    }
    const complex_t zgh = s + (kLanczosG - 0.5);
    const complex_t inv_gamma =
        std::exp(zgh - (s - 0.5) * std::log(zgh)) / lanczos_sum(s);
    const complex_t v = prefactor * inv_gamma;
    check_finite(v, "recip_gamma_complex");
    return v;
}

// ---------------------------------------------------------------------------
// Faddeeva function for Im zeta >= 0 by the pole-corrected trapezoidal rule
// (Chiarella-Reichel / Hunter-Regan). Two interleaved node grids keep the
// evaluation point away from the correction-term poles on the real axis;
// the rule error is O(exp(-(pi/h)^2)) ~ 7e-18 at h = 1/2.
// ---------------------------------------------------------------------------
namespace {

constexpr double kFadH = 0.5;
constexpr int kFadK = 14;  // exp(-(K h)^2) = e^{-49}

struct FaddeevaTables {
    std::array<double, 2 * kFadK + 1> node_a, weight_a;
    std::array<double, 2 * kFadK> node_b, weight_b;
    FaddeevaTables() {
        for (int k = -kFadK; k <= kFadK; ++k) {
            const double x = k * kFadH;
            node_a[static_cast<size_t>(k + kFadK)] = x;
            weight_a[static_cast<size_t>(k + kFadK)] = std::exp(-x * x);
        }
        for (int k = -kFadK; k < kFadK; ++k) {
            const double x = (k + 0.5) * kFadH;
            node_b[static_cast<size_t>(k + kFadK)] = x;
            weight_b[static_cast<size_t>(k + kFadK)] = std::exp(-x * x);
        }
    }
};

complex_t faddeeva_upper(complex_t zeta) {
    static const FaddeevaTables tables;
    const complex_t i_unit(0.0, 1.0);

    // Grid A has correction poles at zeta in h*Z, grid B at h*(Z + 1/2);
    // pick whichever keeps Re zeta at least h/4 away.
    const double r = zeta.real() / kFadH;
    const bool grid_a = std::abs(r - std::nearbyint(r)) >= 0.25;

    complex_t sum(0.0, 0.0);
    if (grid_a) {
        for (size_t j = 0; j < tables.node_a.size(); ++j) {
            sum += tables.weight_a[j] / (zeta - tables.node_a[j]);
        }
    } else {
        for (size_t j = 0; j < tables.node_b.size(); ++j) {
            sum += tables.weight_b[j] / (zeta - tables.node_b[j]);
        }
    }
    complex_t w = (i_unit * kFadH / kPi) * sum;

    // Pole correction, needed (and convergent) only while the pole at zeta
    // lies inside the first Poisson strip Im zeta < pi/h; beyond it the
    // term is below machine epsilon anyway.
    if (zeta.imag() < kPi / kFadH) {
        const complex_t q = std::exp(2.0 * kPi * i_unit * zeta / kFadH);
        const complex_t e = std::exp(-zeta * zeta);
        if (grid_a) {
            w -= 2.0 * e * q / (1.0 - q);
        } else {
            w += 2.0 * e * q / (1.0 + q);
        }
    }
    return w;
}

}  // namespace

complex_t erfcx_complex(complex_t w) {
    if (w.real() >= 0.0) {
        // erfcx(w) = faddeeva(i w); real arguments map to real values
        complex_t v = faddeeva_upper(complex_t(-w.imag(), w.real()));
        if (w.imag() == 0.0) v = complex_t(v.real(), 0.0);
        check_finite(v, "erfcx_complex");
        return v;
    }
    // erfcx(w) = 2 exp(w^2) - erfcx(-w)
    const complex_t w2 = w * w;
    if (w2.real() > 709.0) {
        throw OverflowError("erfcx_complex: exp(w^2) overflows at Re w < 0");
    }
    const complex_t v = 2.0 * std::exp(w2) - erfcx_complex(-w);
    check_finite(v, "erfcx_complex");
    return v;
}

complex_t erfc_complex(complex_t w) {
    if (w.real() >= 0.0) {
        const complex_t mw2 = -w * w;
        if (mw2.real() > 709.0) {
            throw OverflowError("erfc_complex: exp(-w^2) overflows");
        }
        const complex_t v = erfcx_complex(w) * std::exp(mw2);
        check_finite(v, "erfc_complex");
        return v;
    }
    const complex_t v = 2.0 - erfc_complex(-w);
    check_finite(v, "erfc_complex");
    return v;
}

complex_t hermite_prob(int m, complex_t x) {
    if (m < 0) throw std::invalid_argument("hermite_prob: m < 0");
    if (m > 64) {
        throw DegreeError("hermite_prob: m = " + std::to_string(m) +
                          " exceeds the supported degree 64");
    }
    complex_t h_prev(1.0, 0.0);
    if (m == 0) return h_prev;
    complex_t h = x;
    for (int k = 1; k < m; ++k) {
        const complex_t h_next = x * h - static_cast<double>(k) * h_prev;
        h_prev = h;
        h = h_next;
    }
    check_finite(h, "hermite_prob");
    return h;
}

// ---------------------------------------------------------------------------
// Incomplete gamma pair.
// ---------------------------------------------------------------------------
namespace {

using mpf = boost::multiprecision::cpp_bin_float_50;

struct mpc {
    mpf re, im;
};

mpc mpc_add(const mpc& a, const mpc& b) { return {a.re + b.re, a.im + b.im}; }

mpc mpc_scale(const mpc& a, const mpf& c) { return {a.re * c, a.im * c}; }

mpc mpc_div(const mpc& a, const mpc& b) {
    const mpf d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

mpf mpc_abs(const mpc& a) { return sqrt(a.re * a.re + a.im * a.im); }

// The alternating lower-gamma series loses ~alpha/ln(10) digits to
// cancellation near n ~ alpha, so it is accumulated at 50-digit working
// precision and rounded once at the end.
complex_t lower_gamma_series(complex_t s, double alpha, int max_terms) {
    const mpf a(alpha);
    const mpc s_mp{mpf(s.real()), mpf(s.imag())};
    // alpha^s = exp(s ln alpha)
    const mpf ln_a = log(a);
    const mpf mag = exp(s_mp.re * ln_a);
    const mpf phase = s_mp.im * ln_a;
    const mpc alpha_pow_s{mag * cos(phase), mag * sin(phase)};

    mpf c_n(1);  // (-alpha)^n / n!
    mpc sum{0, 0};
    const mpf tol = pow(mpf(10), -38);
    for (int n = 0; n < max_terms; ++n) {
        const mpc denom{s_mp.re + n, s_mp.im};
        const mpc term = mpc_scale(mpc_div(alpha_pow_s, denom), c_n);
        sum = mpc_add(sum, term);
        if (n > alpha && mpc_abs(term) < tol * (mpc_abs(sum) + 1)) {
            return complex_t(static_cast<double>(sum.re),
                             static_cast<double>(sum.im));
        }
        c_n *= -a / (n + 1);
    }
    throw NonConvergence(
        "incomplete_gamma_pair: lower series failed its tail bound after " +
        std::to_string(max_terms) + " terms (alpha=" + std::to_string(alpha) +
        ")");
}

// Legendre continued fraction for Gamma(s, alpha), modified Lentz.
complex_t upper_gamma_cf(complex_t s, double alpha) {
    const double tiny = 1e-290;
    complex_t b = alpha + 1.0 - s;
    if (std::abs(b) < tiny) b = tiny;
    complex_t c = 1.0 / tiny;
    complex_t d = 1.0 / b;
    complex_t f = d;
    for (int j = 1; j <= 400; ++j) {
        const complex_t an = -static_cast<double>(j) * (static_cast<double>(j) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const complex_t delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return std::exp(-alpha + s * std::log(alpha)) * f;
        }
    }
    throw NonConvergence(
        "incomplete_gamma_pair: upper continued fraction did not converge");
}

}  // namespace

IncompleteGammaPair incomplete_gamma_pair(complex_t s, double alpha) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("incomplete_gamma_pair: require alpha >= 1");
    }
    if (near_nonpositive_integer(s, 1e-300)) {
        throw PoleError("incomplete_gamma_pair: s at a nonpositive integer");
    }
    IncompleteGammaPair pair;
    pair.lower = lower_gamma_series(s, alpha, 500);
    pair.upper = upper_gamma_cf(s, alpha);
    check_finite(pair.lower, "incomplete_gamma_pair");
    check_finite(pair.upper, "incomplete_gamma_pair");
    return pair;
}

// ---------------------------------------------------------------------------
// zeta and the gamma Taylor table.
// ---------------------------------------------------------------------------

double zeta_integer(int k) {
    if (k < 2) throw std::invalid_argument("zeta_integer: require k >= 2");
    // Euler-Maclaurin with three Bernoulli corrections at N = 200; the
    // first neglected term is below 1e-20 for every k >= 2.
    const int n_cut = 200;
    double sum = 0.0;
    for (int n = n_cut - 1; n >= 1; --n) {
        sum += std::pow(static_cast<double>(n), -k);
    }
    const double nd = static_cast<double>(n_cut);
    const double inv = std::pow(nd, -k);
    double tail = nd * inv / (k - 1) + 0.5 * inv;
    const double b2 = 1.0 / 6.0, b4 = -1.0 / 30.0, b6 = 1.0 / 42.0;
    double factor = k * inv / nd;  // s * N^(-s-1)
    tail += b2 / 2.0 * factor;
    factor *= static_cast<double>(k + 1) * (k + 2) / (nd * nd);
    tail += b4 / 24.0 * factor;
    factor *= static_cast<double>(k + 3) * (k + 4) / (nd * nd);
    tail += b6 / 720.0 * factor;
    return sum + tail;
}

double GammaTaylorTable::series_at(double s) const {
    double sum = 0.0;
    double p = 1.0;
    for (double b : coeffs) {
        sum += b * p;
        p *= s;
    }
    return sum;
}

GammaTaylorTable gamma_taylor_coeffs(int j_max) {
    if (j_max > 40) {
        throw DegreeError("gamma_taylor_coeffs: j_max = " +
                          std::to_string(j_max) + " exceeds 40");
    }
    if (j_max < 20) {
        throw std::invalid_argument("gamma_taylor_coeffs: table requires j_max >= 20");
    }
    // Gamma(s) - 1/s = (exp(G(s)) - 1)/s with
    // G(s) = -EulerGamma s + sum_{k>=2} (-1)^k zeta(k) s^k / k,
    // so b_j is coefficient j+1 of exp(G).
    const int order = j_max + 1;
    std::vector<double> g(static_cast<size_t>(order) + 1, 0.0);
    g[1] = -kEulerGamma;
    for (int k = 2; k <= order; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        g[static_cast<size_t>(k)] = sign * zeta_integer(k) / k;
    }
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = 1.0;
    for (int i = 1; i <= order; ++i) {
        double acc = 0.0;
        for (int k = 1; k <= i; ++k) {
            acc += k * g[static_cast<size_t>(k)] * c[static_cast<size_t>(i - k)];
        }
        c[static_cast<size_t>(i)] = acc / i;
    }
    GammaTaylorTable table;
    table.coeffs.assign(c.begin() + 1, c.end());
    return table;
}

std::vector<double> a_coefficients(int m_max, int n_poles) {
    if (m_max > 40) {
        throw DegreeError("a_coefficients: m_max = " + std::to_string(m_max) +
                          " exceeds 40");
    }
    if (m_max < 0 || n_poles < 0) {
        throw std::invalid_argument("a_coefficients: require m_max, n_poles >= 0");
    }
    const GammaTaylorTable table = gamma_taylor_coeffs(std::max(m_max, 20));
    std::vector<double> a(static_cast<size_t>(m_max) + 1, 0.0);
    for (int m = 0; m <= m_max; ++m) {
        double pole_sum = 0.0;
        double j_factorial = 1.0;
        for (int j = 1; j <= n_poles; ++j) {
            j_factorial *= j;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            pole_sum += sign / (j_factorial * std::pow(static_cast<double>(j),
                                                       m + 1));
        }
        const double outer_sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^(m+1)
        a[static_cast<size_t>(m)] = table[m] + outer_sign * pole_sum;
    }
    return a;
}

}  // namespace lnlaplace
