#include "primelab/kac.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"
#include "primelab/philox.hpp"
#include "primelab/quadrature.hpp"

namespace primelab {

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double SQRT_PI = 1.7724538509055160272981674833411;
}  // namespace

// -------------------------------------------------------------- amplitude -

double amplitude(double t, double gamma_j, const ExperimentConfig& cfg) {
    double d = cfg.sigma * gamma_j * std::exp(-t);
    return std::exp(-0.5 * d * d - 0.5 * t);
}

// ---------------------------------------------------------------- h_exact -

HPair h_exact(double t, const ExperimentConfig& cfg, const ZeroTable& table) {
    // The model is built from the supplied ordinates at or below the cutoff
    // b*theta/sigma; a short or synthetic table simply yields a smaller model.
    double cutoff = cfg.required_zero_height();
    double q = cfg.sigma * std::exp(-t);
    long double h1 = 0.0L, h2 = 0.0L;
    for (double g : table.heights) {
        if (g > cutoff) break;
        double d = q * g;
        double e = d * d + t;
        if (e > 750.0) break;  // underflow; terms only shrink from here
        double a2 = std::exp(-e);
        h1 += (long double)a2;
        h2 += (long double)(a2 * g * g);
    }
    return {(double)h1, (double)h2};
}

// ----------------------------------------------------------- h_asymptotic -

HPair h_asymptotic(double t_arg, const ExperimentConfig& cfg) {
    double ratio = t_arg / (4.0 * PI * cfg.sigma);
    if (!(ratio > 1.0))
        throw error(errc::domain,
                    "h_asymptotic: t_arg <= 4*pi*sigma (t_arg=" + fmt_double(t_arg) +
                        ", 4*pi*sigma=" + fmt_double(4.0 * PI * cfg.sigma) +
                        "), outside the asymptotic's validity");
    double L = std::log(ratio);
    HPair h;
    h.h1 = (L - euler_gamma / 2.0) / (4.0 * cfg.sigma * SQRT_PI);
    h.h2 = t_arg * t_arg * (L + (2.0 - euler_gamma) / 2.0) /
           (8.0 * cfg.sigma * cfg.sigma * cfg.sigma * SQRT_PI);
    return h;
}

// --------------------------------------------- expected_level_count_closed -

double expected_level_count_closed(double lambda, const ExperimentConfig& cfg) {
    double norm = 1.0 / (std::sqrt(2.0) * PI * cfg.sigma);
    if (lambda == 1.0) return (cfg.b - cfg.a) * norm;  // integrand is exactly 1
    double fourps = 4.0 * PI * cfg.sigma;
    if (!(cfg.a > fourps))
        throw error(errc::domain,
                    "expected_level_count_closed: a <= 4*pi*sigma (a=" + fmt_double(cfg.a) +
                        ", 4*pi*sigma=" + fmt_double(fourps) +
                        "); the integrand's log changes sign inside (a, b)");
    double s = cfg.sigma * SQRT_PI * (lambda - 1.0) * (lambda - 1.0);
    quadrature_options opt;
    opt.rel_tol = 1e-8;
    double integral = integrate(
        [&](double t) { return std::exp(-s / std::log(t / fourps)); }, cfg.a, cfg.b, opt);
    return integral * norm;
}

// ------------------------------------------ expected_level_count_midform --

double expected_level_count_midform(double lambda, const ExperimentConfig& cfg,
                                    const ZeroTable& table) {
    if (table.heights.empty()) return 0.0;  // no oscillation, no level points
    double c = (1.0 - lambda) / 2.0;
    double A = std::log(cfg.a);
    double B = std::log(cfg.b);
    quadrature_options opt;
    opt.rel_tol = 1e-8;
    double integral = integrate(
        [&](double t) {
            HPair h = h_exact(t, cfg, table);
            if (h.h1 <= 0.0) return 0.0;  // fully damped tail of the model
            return std::sqrt(h.h2 / h.h1) * std::exp(-c * c / h.h1);
        },
        A, B, opt);
    return integral / PI;
}

// ------------------------------------------------------ crossing counting -

namespace {

// Random-phase model fixed over one Monte Carlo run: grid over (A, B), the
// ordinates below the cutoff, and (when it fits) the amplitude matrix shared
// by all trials.  The matrix path and the recompute path produce identical
// doubles: both evaluate exp(-(sigma gamma e^{-t})^2/2 - t/2) per pair.
struct crossing_model {
    const ExperimentConfig& cfg;
    std::vector<double> gammas;
    double c;                   // level in f-coordinates, c = (1 - lambda)/2
    double A, B;
    std::uint64_t segments;     // grid intervals; nodes = segments + 1
    double step;
    std::vector<double> amp;    // node-major [node*k + j], may be empty
    static constexpr std::uint64_t MAX_NODES = 100000000;
    static constexpr std::uint64_t MAX_MATRIX = 16000000;

    crossing_model(const ExperimentConfig& cfg_, const ZeroTable& table, double lambda)
        : cfg(cfg_), c((1.0 - lambda) / 2.0), A(std::log(cfg_.a)), B(std::log(cfg_.b)) {
        double cutoff = cfg.required_zero_height();
        for (double g : table.heights) {
            if (g > cutoff) break;
            gammas.push_back(g);
        }
        if (gammas.empty()) {
            segments = 1;
            step = B - A;
            return;
        }
        double max_step = 1.0 / (20.0 * gammas.back());
        segments = (std::uint64_t)std::ceil((B - A) / max_step);
        if (segments + 1 > MAX_NODES)
            throw error(errc::resource,
                        "crossing grid needs " + fmt_uint(segments + 1) +
                            " nodes (> 1e8); reduce b or truncate the zero table");
        step = (B - A) / (double)segments;
        if ((segments + 1) * gammas.size() <= MAX_MATRIX) {
            amp.resize((segments + 1) * gammas.size());
            for (std::uint64_t i = 0; i <= segments; ++i) {
                double t = node(i);
                for (std::size_t j = 0; j < gammas.size(); ++j)
                    amp[i * gammas.size() + j] = amplitude(t, gammas[j], cfg);
            }
        }
    }

    double node(std::uint64_t i) const {
        return i == segments ? B : A + step * (double)i;
    }

    // g(t) at an arbitrary point (used by bisection and the recompute path).
    double eval(double t, const std::vector<double>& phases) const {
        double acc = -c;
        for (std::size_t j = 0; j < gammas.size(); ++j)
            acc += amplitude(t, gammas[j], cfg) * std::cos(gammas[j] * t + phases[j]);
        return acc;
    }

    double eval_node(std::uint64_t i, const std::vector<double>& phases) const {
        if (amp.empty()) return eval(node(i), phases);
        double t = node(i);
        double acc = -c;
        const double* row = amp.data() + i * gammas.size();
        for (std::size_t j = 0; j < gammas.size(); ++j)
            acc += row[j] * std::cos(gammas[j] * t + phases[j]);
        return acc;
    }

    std::uint64_t count(const std::vector<double>& phases) const {
        if (phases.size() != gammas.size())
            throw error(errc::validation,
                        "crossing count: expected " + fmt_uint(gammas.size()) +
                            " phases, got " + fmt_uint(phases.size()));
        if (gammas.empty()) {
            // g is the constant -c: no crossings (lambda = 1 degenerates to
            // the zero function; we count no isolated crossings there either).
            return 0;
        }
        double bisect_tol = 1e-12 * (B - A);
        std::uint64_t crossings = 0;
        int prev_sign = 0;
        double prev_t = A;
        for (std::uint64_t i = 0; i <= segments; ++i) {
            double gi = eval_node(i, phases);
            int s = gi > 0.0 ? 1 : (gi < 0.0 ? -1 : 0);
            if (s == 0) {
                // An exact grid zero counts once; no bracket across it.
                ++crossings;
                prev_sign = 0;
                continue;
            }
            if (prev_sign != 0 && s != prev_sign) {
                ++crossings;
                refine(prev_t, node(i), prev_sign, phases, bisect_tol);
            }
            prev_sign = s;
            prev_t = node(i);
        }
        return crossings;
    }

    // Bisection to the mandated width; the bracket already guarantees the
    // root, so the refined location does not change the count.
    void refine(double lo, double hi, int lo_sign, const std::vector<double>& phases,
                double tol) const {
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            double gm = eval(mid, phases);
            if (gm == 0.0) return;
            if ((gm > 0.0 ? 1 : -1) == lo_sign)
                lo = mid;
            else
                hi = mid;
        }
    }
};

}  // namespace

std::uint64_t count_crossings_with_phases(const ExperimentConfig& cfg,
                                          const ZeroTable& table, double lambda,
                                          const std::vector<double>& phases) {
    crossing_model model(cfg, table, lambda);
    return model.count(phases);
}

CrossingStats simulate_crossings(const ExperimentConfig& cfg, const ZeroTable& table,
                                 double lambda, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 2)
        throw error(errc::validation, "simulate_crossings: trials must be >= 2");
    crossing_model model(cfg, table, lambda);
    std::size_t k = model.gammas.size();
    std::vector<double> phases(k);
    std::vector<double> counts;
    counts.reserve(trials);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        // Per-trial counter-based stream: order-independent, parallel-safe.
        for (std::size_t j = 0; j < k; ++j)
            phases[j] = -PI + 2.0 * PI * philox_open01(seed, trial, j);
        counts.push_back((double)model.count(phases));
    }
    double mean = 0.0;
    for (double v : counts) mean += v;
    mean /= (double)trials;
    double ss = 0.0;
    for (double v : counts) ss += (v - mean) * (v - mean);
    double sample_var = ss / (double)(trials - 1);
    CrossingStats st;
    st.mean = mean;
    st.std_error = std::sqrt(sample_var / (double)trials);
    st.trials = trials;
    return st;
}

}  // namespace primelab
