#include "primelab/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"
#include "primelab/specfun.hpp"

namespace primelab {

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
}

// --------------------------------------------------------------- s_direct -

double s_direct(std::uint64_t n, const ExperimentConfig& cfg, const Sieve& sieve) {
    std::uint64_t half = (std::uint64_t)std::ceil(cfg.eta * cfg.sigma);
    if (n < half + 2)
        throw error(errc::validation,
                    "s_direct: n - ceil(eta*sigma) must be >= 2 (n=" + fmt_uint(n) +
                        ", half=" + fmt_uint(half) + ")");
    LambdaWindow w = sieve.lambda_window(n, half);
    // Gaussian-weighted sum, accumulated in long double: the window spans
    // ~2*eta*sigma terms and the result sits near 1, so keep headroom.
    long double acc = 0.0L;
    double inv_sigma = 1.0 / cfg.sigma;
    std::int64_t h = (std::int64_t)half;
    for (std::int64_t j = -h; j <= h; ++j) {
        double lam = w.values[(std::size_t)(j + h)];
        if (lam == 0.0) continue;
        double z = (double)j * inv_sigma;
        double weight = ((double)n / ((double)n + (double)j)) * std::exp(-0.5 * z * z);
        acc += (long double)(lam * weight);
    }
    return (double)(acc / ((long double)cfg.sigma * std::sqrt(2.0L * (long double)PI)));
}

// ------------------------------------------------------------------ s_hat -

double s_hat(double x, const ExperimentConfig& cfg, const ZeroTable& table) {
    if (!(x >= cfg.a && x <= cfg.b))
        throw error(errc::validation, "s_hat: x=" + fmt_double(x) + " outside [a, b] = [" +
                                          fmt_double(cfg.a) + ", " + fmt_double(cfg.b) + "]");
    if (table.heights.empty()) return 1.0;  // degenerate: no oscillation
    double cutoff = x * cfg.theta / cfg.sigma;
    if (cutoff > table.max_height)
        throw error(errc::insufficient_table,
                    "s_hat: cutoff " + fmt_double(cutoff) + " exceeds table height " +
                        fmt_double(table.max_height));
    double logx = std::log(x);
    double damp_scale = cfg.sigma / x;
    // Zeros come in conjugate pairs; the sum over |gamma| <= cutoff collapses
    // to twice the cosine sum over positive ordinates.
    long double acc = 0.0L;
    for (double g : table.heights) {
        if (g > cutoff) break;
        double d = damp_scale * g;
        acc += (long double)(std::exp(-0.5 * d * d) * std::cos(g * logx));
    }
    return 1.0 - 2.0 / std::sqrt(x) * (double)acc;
}

// ----------------------------------------------------------- error_budget -

ErrorBudget error_budget(const ExperimentConfig& cfg) {
    double logb = std::log(cfg.b);
    ErrorBudget eb;
    eb.term_eta = logb / (cfg.eta * std::exp(0.5 * cfg.eta * cfg.eta));
    eb.term_theta =
        std::pow(cfg.b, 1.5) * logb / (cfg.theta * std::exp(0.5 * cfg.theta * cfg.theta));
    return eb;
}

// ---------------------------------------------------------------- r_sigma -

double r_sigma(double x, const ExperimentConfig& cfg, const Sieve& sieve) {
    if (!(x - cfg.sigma >= 2.0))
        throw error(errc::validation,
                    "r_sigma: x - sigma must be >= 2, got x=" + fmt_double(x) +
                        ", sigma=" + fmt_double(cfg.sigma));
    std::uint64_t primes = sieve.prime_count_window(x, cfg.sigma);
    return (double)primes * std::log(x) / (2.0 * cfg.sigma);
}

// ------------------------------------------------------- gamma_ratio_probe -

GammaRatioProbe gamma_ratio_probe(double alpha, double y) {
    if (!(alpha >= 10.0))
        throw error(errc::validation,
                    "gamma_ratio_probe: alpha must be >= 10, got " + fmt_double(alpha));
    if (!(std::fabs(y) <= 10.0 * std::sqrt(alpha)))
        throw error(errc::validation,
                    "gamma_ratio_probe: |y| must be <= 10*sqrt(alpha), got " + fmt_double(y));
    GammaRatioProbe p;
    p.alpha = alpha;
    p.y = y;
    // Exact: Gamma(alpha - 1/2 + iy) / Gamma(alpha) through log gamma.
    std::complex<double> lg =
        log_gamma(std::complex<double>(alpha - 0.5, y)) - log_gamma(std::complex<double>(alpha, 0.0));
    p.exact_modulus = std::exp(lg.real());
    p.exact_phase = wrap_2pi(lg.imag());
    // Stirling-style surrogate.
    p.approx_modulus = std::exp(-y * y / (2.0 * (alpha - 0.5))) / std::sqrt(alpha);
    p.approx_phase = wrap_2pi(y * std::log(alpha));
    return p;
}

}  // namespace primelab
