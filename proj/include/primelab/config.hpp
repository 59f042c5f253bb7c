#pragma once
// Experiment configuration shared by every module.  The free parameters are
// (b, vartheta, rho, eta); everything else is derived:
//   sigma = sqrt(rho * b * log b)      window width of the weighted count
//   theta = sqrt(rho * log b)          zero-sum cutoff multiplier
//   a     = vartheta * b               left endpoint of the study interval
// The zero table needed for a run must reach b*theta/sigma = sqrt(b).
#include <cstdint>

namespace primelab {

struct ExperimentConfig {
    double b = 0.0;
    double vartheta = 0.5;
    double rho = 3.1;
    double eta = 4.0;
    std::uint64_t sample_count = 2000;
    std::uint64_t rng_seed = 42;

    // derived, filled by create()
    double sigma = 0.0;
    double theta = 0.0;
    double a = 0.0;

    // Validates ranges (rho > 3, vartheta in (0,1), b >= 1e4, eta in [1,10],
    // a - eta*sigma > 1) and computes the derived fields.  Throws
    // error(errc::validation) with the offending field named.
    static ExperimentConfig create(double b, double vartheta = 0.5, double rho = 3.1,
                                   double eta = 4.0, std::uint64_t sample_count = 2000,
                                   std::uint64_t rng_seed = 42);

    // Height the zero table must reach: b*theta/sigma, algebraically sqrt(b).
    double required_zero_height() const;

    // Standard deviation of the level distribution about 1:
    //   sd = sqrt(log(b/(4 pi sigma)) / (2 sigma sqrt(pi))).
    // Throws error(errc::domain) when b <= 4*pi*sigma.
    double sd() const;
};

}  // namespace primelab
