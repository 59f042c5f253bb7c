#pragma once
// Level-crossing machinery for the random-phase model behind the expected
// level-count distribution.
//
// With t = log x, A = log a, B = log b, the model is
//   f(t) = sum_j a_j(t) cos(gamma_j t + Phi_j),
//   a_j(t) = exp(-(sigma gamma_j e^{-t})^2 / 2 - t/2),
// summed over the zero ordinates gamma_j <= b*theta/sigma.  With all phases
// zero, 1 - 2 f(t) equals S_hat_sigma(e^t) identically, and the level set
// S_hat = lambda maps to f = c with c = (1 - lambda)/2.
//
// Amplitude moments (exact sums over the table, and their asymptotics):
//   h1(t) = sum a_j(t)^2,  h2(t) = sum a_j(t)^2 gamma_j^2
//   h1 ~ (log(T/(4 pi sigma)) - g_E/2)            / (4 sigma sqrt(pi))
//   h2 ~ T^2 (log(T/(4 pi sigma)) + (2 - g_E)/2) / (8 sigma^3 sqrt(pi))
// at T = e^t, g_E Euler's constant.
//
// Expected number of lambda-level points on (a, b):
//   closed form:  (1/(sqrt(2) pi sigma)) Int_a^b
//                     exp(-sigma sqrt(pi) (lambda-1)^2 / log(t/(4 pi sigma))) dt
//   mid form:     (1/pi) Int_A^B sqrt(h2/h1) exp(-c^2/h1) dt
// and a Monte Carlo estimate from crossing counts under random phases.
#include <cstdint>
#include <vector>

#include "primelab/config.hpp"
#include "primelab/specfun.hpp"
#include "primelab/zeros.hpp"

namespace primelab {

// Euler's constant, distinct from the zero ordinates also written gamma.
inline constexpr double euler_gamma = 0.5772156649015329;

// Amplitude a_j(t) of the random-phase model.
double amplitude(double t, double gamma_j, const ExperimentConfig& cfg);

struct HPair {
    double h1 = 0.0;
    double h2 = 0.0;
};

// Exact moments at t in [log a, log b]; empty table gives (0, 0); otherwise
// the table must cover b*theta/sigma.
HPair h_exact(double t, const ExperimentConfig& cfg, const ZeroTable& table);

// Asymptotic moments at T = t_arg in (vartheta*b, b); domain error when
// t_arg <= 4 pi sigma (the log becomes nonpositive, outside validity).
HPair h_asymptotic(double t_arg, const ExperimentConfig& cfg);

// Closed-form expected level count, quadrature to relative 1e-8; the o(1)
// factor is taken as 0.  lambda = 1 reduces exactly to (b-a)/(sqrt(2) pi
// sigma); for lambda != 1 the integrand needs a > 4 pi sigma (domain error
// otherwise, the exponent's log changes sign inside the range).
double expected_level_count_closed(double lambda, const ExperimentConfig& cfg);

// Mid-form expected level count from the exact amplitude moments.
double expected_level_count_midform(double lambda, const ExperimentConfig& cfg,
                                    const ZeroTable& table);

// Crossing count of g(t) = -c + sum a_j(t) cos(gamma_j t + phases[j]) over
// (A, B), on a grid with step <= 1/(20 gamma_max) and bisection refinement of
// each bracket to 1e-12 (B-A).  Exposed so deterministic-phase checks can
// share the counting path with the Monte Carlo.  Throws a resource error if
// the grid would exceed 1e8 points.
std::uint64_t count_crossings_with_phases(const ExperimentConfig& cfg,
                                          const ZeroTable& table, double lambda,
                                          const std::vector<double>& phases);

struct CrossingStats {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Monte Carlo over trials with phases i.i.d. uniform on (-pi, pi), drawn from
// counter-based per-trial streams of `seed` (order-independent, parallel-safe).
// Requires trials >= 2.
CrossingStats simulate_crossings(const ExperimentConfig& cfg, const ZeroTable& table,
                                 double lambda, std::uint64_t trials, std::uint64_t seed);

}  // namespace primelab
