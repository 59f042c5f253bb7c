#include "primelab/config.hpp"

#include <cmath>
#include <string>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"

namespace primelab {

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
}

ExperimentConfig ExperimentConfig::create(double b, double vartheta, double rho, double eta,
                                          std::uint64_t sample_count, std::uint64_t rng_seed) {
    if (!(b >= 1e4))
        throw error(errc::validation, "config: b must be >= 1e4, got " + fmt_double(b));
    if (!(vartheta > 0.0 && vartheta < 1.0))
        throw error(errc::validation,
                    "config: vartheta must lie in (0,1), got " + fmt_double(vartheta));
    if (!(rho > 3.0))
        throw error(errc::validation,
                    "config: rho must be strictly greater than 3, got " + fmt_double(rho));
    if (!(eta >= 1.0 && eta <= 10.0))
        throw error(errc::validation,
                    "config: eta must lie in [1,10], got " + fmt_double(eta));
    if (sample_count == 0)
        throw error(errc::validation, "config: sample_count must be positive");

    ExperimentConfig cfg;
    cfg.b = b;
    cfg.vartheta = vartheta;
    cfg.rho = rho;
    cfg.eta = eta;
    cfg.sample_count = sample_count;
    cfg.rng_seed = rng_seed;
    cfg.sigma = std::sqrt(rho * b * std::log(b));
    cfg.theta = std::sqrt(rho * std::log(b));
    cfg.a = vartheta * b;
    if (!(cfg.a - eta * cfg.sigma > 1.0))
        throw error(errc::validation,
                    "config: a - eta*sigma must exceed 1 (a=" + fmt_double(cfg.a) +
                        ", eta*sigma=" + fmt_double(eta * cfg.sigma) +
                        "); the weighted-count window would leave the valid range");
    return cfg;
}

double ExperimentConfig::required_zero_height() const { return b * theta / sigma; }

double ExperimentConfig::sd() const {
    double l = std::log(b / (4.0 * PI * sigma));
    if (!(l > 0.0))
        throw error(errc::domain,
                    "config: sd undefined, b <= 4*pi*sigma (b=" + fmt_double(b) +
                        ", 4*pi*sigma=" + fmt_double(4.0 * PI * sigma) + ")");
    return std::sqrt(l / (2.0 * sigma * std::sqrt(PI)));
}

}  // namespace primelab
