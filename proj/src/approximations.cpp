#include "lnlaplace/approximations.hpp"

#include <cmath>
#include <string>

#include "lnlaplace/errors.hpp"
#include "lnlaplace/special_functions.hpp"

namespace lnlaplace {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSqrt2 = 1.41421356237309504880168872421;

void check_finite(complex_t v, const std::string& op) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw OverflowError(op + ": result exceeds double range");
    }
}

}  // namespace

SmallZConfig::SmallZConfig(double alpha_, int n_terms_, double k_bound_)
    : alpha(alpha_), n_terms(n_terms_), k_bound(k_bound_) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("SmallZConfig: require alpha >= 1");
    }
    if (n_terms < 1) {
        throw std::invalid_argument("SmallZConfig: require n_terms >= 1");
    }
    if (!(k_bound <= 1.0)) {
        throw std::invalid_argument("SmallZConfig: require k_bound <= 1");
    }
}

SigmaAsymConfig::SigmaAsymConfig(int n_poles_, int m_terms_)
    : n_poles(n_poles_), m_terms(m_terms_) {
    if (n_poles < 0 || n_poles > 30 || m_terms < 0 || m_terms > 30) {
        throw std::invalid_argument(
            "SigmaAsymConfig: require 0 <= N <= 30 and 0 <= M <= 30");
    }
}

namespace detail {

complex_t erfc_series_term(int n, complex_t v, double log_alpha, double sigma) {
    const double s2 = sigma * sigma;
    const complex_t shifted = v - log_alpha;
    const complex_t w_n = (shifted + s2 * n) / (kSqrt2 * sigma);
    // Combined exponent of ((-z)^n/n!) e^{mu n + sigma^2 n^2/2 - w_n^2}:
    //   n ln(alpha) - ln n! - (v - ln alpha)^2 / (2 sigma^2).
    const complex_t log_coeff = n * log_alpha -
                                std::lgamma(static_cast<double>(n) + 1.0) -
                                shifted * shifted / (2.0 * s2);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    if (w_n.real() >= 0.0) {
        if (log_coeff.real() > 700.0) {
            throw TermOverflow(
                "small_z term overflows after log-domain pairing at n = " +
                    std::to_string(n),
                n);
        }
        if (log_coeff.real() < -745.0) return complex_t(0.0, 0.0);
        return 0.5 * sign * std::exp(log_coeff) * erfcx_complex(w_n);
    }
    // erfc(w) = 2 - erfc(-w): the raw term reappears, evaluated in the log
    // domain, minus the stable scaled piece at -w_n.
    const complex_t log_raw = static_cast<double>(n) * v +
                              0.5 * s2 * static_cast<double>(n) *
                                  static_cast<double>(n) -
                              std::lgamma(static_cast<double>(n) + 1.0);
    if (log_raw.real() > 709.0 || log_coeff.real() > 700.0) {
        throw TermOverflow(
            "small_z term overflows after log-domain pairing at n = " +
                std::to_string(n),
            n);
    }
    const complex_t raw = sign * std::exp(log_raw);
    const complex_t scaled =
        (log_coeff.real() < -745.0)
            ? complex_t(0.0, 0.0)
            : 0.5 * sign * std::exp(log_coeff) * erfcx_complex(-w_n);
    return raw - scaled;
}

}  // namespace detail

double small_z_error_bound(double alpha, double sigma) {
    if (!(alpha >= 1.0) || !(sigma > 0.0)) {
        throw std::invalid_argument(
            "small_z_error_bound: require alpha >= 1 and sigma > 0");
    }
    return std::exp(0.5 * kPi * kPi / (sigma * sigma) - alpha) /
           (std::sqrt(2.0 * kPi) * sigma);
}

namespace {

// Real-axis specialization. The series cancels by factors up to ~e^{|z|},
// so the raw reflected terms are assembled and accumulated in long double;
// the erfcx-scaled pieces stay in double (they are never the large terms).
double small_z_sum_real_axis(double v, double log_alpha, double sigma,
                             int n_terms) {
    const double s2 = sigma * sigma;
    long double acc = 0.0L;
    const long double v_ld = static_cast<long double>(v);
    for (int n = 0; n < n_terms; ++n) {
        const double w_n = (v - log_alpha + s2 * n) / (kSqrt2 * sigma);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double shifted = v - log_alpha;
        const double log_coeff = n * log_alpha -
                                 std::lgamma(static_cast<double>(n) + 1.0) -
                                 shifted * shifted / (2.0 * s2);
        if (w_n >= 0.0) {
            if (log_coeff > 700.0) {
                throw TermOverflow(
                    "small_z term overflows after log-domain pairing at n = " +
                        std::to_string(n),
                    n);
            }
            if (log_coeff < -745.0) continue;
            acc += 0.5 * sign * std::exp(log_coeff) *
                   erfcx_complex({w_n, 0.0}).real();
            continue;
        }
        const long double log_raw =
            static_cast<long double>(n) * v_ld +
            0.5L * static_cast<long double>(s2) * n * n -
            lgammal(static_cast<long double>(n) + 1.0L);
        if (log_raw > 709.0L || log_coeff > 700.0) {
            throw TermOverflow(
                "small_z term overflows after log-domain pairing at n = " +
                    std::to_string(n),
                n);
        }
        acc += sign * expl(log_raw);
        if (log_coeff >= -745.0) {
            acc -= sign * 0.5 * std::exp(log_coeff) *
                   erfcx_complex({-w_n, 0.0}).real();
        }
    }
    return static_cast<double>(acc);
}

}  // namespace

ApproxResult small_z_series(const CutPlanePoint& z, const LognormalParams& p,
                            const SmallZConfig& cfg) {
    if (!(cfg.alpha >= 1.0) || cfg.n_terms < 1 || !(cfg.k_bound <= 1.0)) {
        throw std::invalid_argument("small_z_series: invalid configuration");
    }
    const complex_t v = p.mu + z.log();
    const double log_alpha = std::log(cfg.alpha);
    complex_t sum(0.0, 0.0);
    if (v.imag() == 0.0) {
        sum = complex_t(small_z_sum_real_axis(v.real(), log_alpha, p.sigma,
                                              cfg.n_terms),
                        0.0);
    } else {
        for (int n = 0; n < cfg.n_terms; ++n) {
            sum += detail::erfc_series_term(n, v, log_alpha, p.sigma);
        }
    }
    check_finite(sum, "small_z_series");

    ApproxResult result;
    result.value = sum;
    // Remainder bound: uniform for k_bound = 0, else the abscissa-k variant
    //   (1/(sqrt(2 pi) sigma)) exp(pi^2/(2 sigma^2) + sigma^2 k^2/2
    //                               - alpha - k (mu + ln|z|)).
    double remainder;
    if (cfg.k_bound == 0.0) {
        remainder = small_z_error_bound(cfg.alpha, p.sigma);
    } else {
        const double s2 = p.sigma * p.sigma;
        remainder = std::exp(0.5 * kPi * kPi / s2 +
                             0.5 * s2 * cfg.k_bound * cfg.k_bound - cfg.alpha -
                             cfg.k_bound * v.real()) /
                    (std::sqrt(2.0 * kPi) * p.sigma);
    }
    // Truncation tail: first omitted term times the geometric factor from
    // the term-ratio bound |T_{n+1}/T_n| <= alpha/(n+1), doubled for the
    // mild non-monotonicity of |erfcx| along the complex ray.
    const double rho = cfg.alpha / (cfg.n_terms + 1);
    if (rho < 1.0) {
        const double first_omitted = std::abs(
            detail::erfc_series_term(cfg.n_terms, v, log_alpha, p.sigma));
        result.error_bound = remainder + 2.0 * first_omitted / (1.0 - rho);
    }
    return result;
}

ApproxResult sigma_asymptotic(const CutPlanePoint& z, const LognormalParams& p,
                              const SigmaAsymConfig& cfg) {
    if (cfg.n_poles < 0 || cfg.n_poles > 30 || cfg.m_terms < 0 ||
        cfg.m_terms > 30) {
        throw std::invalid_argument("sigma_asymptotic: invalid configuration");
    }
    const double sigma = p.sigma;
    const double s2 = sigma * sigma;
    const complex_t v = p.mu + z.log();

    // First sum: the same erfc-paired terms with alpha = 1 (ln z, not
    // ln(z/alpha)), n = 0..N.
    complex_t first(0.0, 0.0);
    for (int n = 0; n <= cfg.n_poles; ++n) {
        first += detail::erfc_series_term(n, v, 0.0, sigma);
    }

    // Second sum: sum_m (-1)^m a_m / (sqrt(2 pi) sigma^(m+1))
    //             e^{-v^2/(2 sigma^2)} H_m(-v/sigma).
    const std::vector<double> a = a_coefficients(cfg.m_terms, cfg.n_poles);
    const complex_t gauss_exp = -v * v / (2.0 * s2);
    if (gauss_exp.real() > 700.0) {
        throw TermOverflow(
            "sigma_asymptotic: exp(-v^2/(2 sigma^2)) overflows", 0);
    }
    const complex_t envelope = std::exp(gauss_exp) / std::sqrt(2.0 * kPi);
    const complex_t hermite_arg = -v / sigma;
    complex_t second(0.0, 0.0);
    double sigma_pow = sigma;
    for (int m = 0; m <= cfg.m_terms; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        second += sign * a[static_cast<size_t>(m)] / sigma_pow *
                  hermite_prob(m, hermite_arg);
        sigma_pow *= sigma;
    }
    second *= envelope;

    ApproxResult result;
    result.value = first + second;
    check_finite(result.value, "sigma_asymptotic");
    return result;  // error_bound absent: O(sigma^-M-2) is an order estimate
}

DivergenceWitness divergence_witness(complex_t z, const LognormalParams& p,
                                     int n_max) {
    if (n_max < 0) throw std::invalid_argument("divergence_witness: n_max < 0");
    DivergenceWitness out;
    out.partial_sum_magnitudes.reserve(static_cast<size_t>(n_max) + 1);
    if (z == complex_t(0.0, 0.0)) {
        out.partial_sum_magnitudes.assign(static_cast<size_t>(n_max) + 1, 1.0);
        return out;
    }
    const complex_t log_z = std::log(z);
    const double s2 = p.sigma * p.sigma;
    complex_t partial(0.0, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        const complex_t log_term = nd * (log_z + p.mu) +
                                   complex_t(0.5 * s2 * nd * nd -
                                                 std::lgamma(nd + 1.0),
                                             nd * kPi);
        if (log_term.real() > 709.0) {
            out.overflow_index = n;
            break;
        }
        partial += std::exp(log_term);  // the i pi n phase carries (-1)^n
        out.partial_sum_magnitudes.push_back(std::abs(partial));
    }
    return out;
}

int divergence_index(complex_t z, const LognormalParams& p) {
    if (z == complex_t(0.0, 0.0)) {
        throw std::invalid_argument("divergence_index: require z != 0");
    }
    const double mod_z = std::abs(z);
    const double s2 = p.sigma * p.sigma;
    const auto ratio = [&](int n) {
        return mod_z * std::exp(p.mu + s2 * (n + 0.5)) / (n + 1);
    };
    int last_below = -1;
    for (int n = 0; n < 100000; ++n) {
        if (ratio(n) <= 1.0) {
            last_below = n;
        } else if (ratio(n) > 2.0 && n > last_below + 10) {
            // Ratio grows monotonically once e^{sigma^2} (n+1)/(n+2) >= 1;
            // past a safety margin nothing returns below 1.
            break;
        }
    }
    return last_below + 1;
}

}  // namespace lnlaplace
