#pragma once
// The two central objects of the study and their supporting diagnostics.
//
// Weighted prime-power density around n (sieve-backed, exact arithmetic):
//   S_sigma(n) = (1/(sigma sqrt(2 pi))) sum_{|j| <= eta*sigma}
//                (n/(n+j)) Lambda(n+j) exp(-(j/sigma)^2/2)
//
// Explicit-formula approximation over zero ordinates gamma (pairing +-gamma):
//   S_hat_sigma(x) = 1 - (2/sqrt(x)) sum_{0 < gamma <= x*theta/sigma}
//                    exp(-(sigma*gamma/x)^2/2) cos(gamma log x)
//
// Prime-density ratio on the same window:
//   R_sigma(x) = (pi(x+sigma) - pi(x-sigma)) log(x) / (2 sigma)
//
// Plus the error-budget terms for the (eta, theta) truncations and a numeric
// probe of the Stirling simplification of Gamma(alpha - 1/2 + iy)/Gamma(alpha).
#include <cstdint>
#include <optional>

#include "primelab/config.hpp"
#include "primelab/sieve.hpp"
#include "primelab/zeros.hpp"

namespace primelab {

// One sampled point of a series run; optional columns filled on request.
struct SeriesSample {
    double x = 0.0;
    double s_hat = 0.0;
    std::optional<double> s_direct;
    std::optional<double> r_sigma;
};

// S_sigma(n) with window half-width ceil(eta*sigma).  Requires
// n - ceil(eta*sigma) >= 2 and sieve capacity >= n + ceil(eta*sigma).
double s_direct(std::uint64_t n, const ExperimentConfig& cfg, const Sieve& sieve);

// S_hat_sigma(x) with per-sample cutoff x*theta/sigma.  An empty table gives
// exactly 1 (no oscillation); otherwise the table must cover the cutoff or an
// insufficient-table error is thrown.
double s_hat(double x, const ExperimentConfig& cfg, const ZeroTable& table);

// Truncation budget terms, implied constants taken as 1 (advisory only):
//   term_eta   = log(b) / (eta * exp(eta^2/2))
//   term_theta = b^(3/2) log(b) / (theta * exp(theta^2/2))
struct ErrorBudget {
    double term_eta = 0.0;
    double term_theta = 0.0;
};
ErrorBudget error_budget(const ExperimentConfig& cfg);

// R_sigma(x); requires x - sigma >= 2 and sieve capacity >= x + sigma.
double r_sigma(double x, const ExperimentConfig& cfg, const Sieve& sieve);

// Numeric validation of the Stirling-type simplification used for the ratio
//   w(y) = Gamma(alpha - 1/2 + i y) / Gamma(alpha):
//     modulus ~ (1/sqrt(alpha)) exp(-y^2 / (2 (alpha - 1/2)))
//     phase   ~ y log(alpha)            (mod 2 pi)
// exact_* come from the Lanczos complex log-gamma; phases are reduced to
// [0, 2 pi).  Valid for alpha >= 10, |y| <= 10 sqrt(alpha).
struct GammaRatioProbe {
    double alpha = 0.0;
    double y = 0.0;
    double exact_modulus = 0.0;
    double exact_phase = 0.0;
    double approx_modulus = 0.0;
    double approx_phase = 0.0;
};
GammaRatioProbe gamma_ratio_probe(double alpha, double y);

}  // namespace primelab
