#pragma once
// Figure analytics: least-squares fit and correlation, the implied normal
// variance, empirical level counts from sampled series, histograms, the
// chi-square goodness-of-fit test, and band fractions.
//
// The variance tied to a fitted slope/correlation pair is
//   var = (m/r)^2 * log(b/(4 pi sigma)) / (2 sigma sqrt(pi)).
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "primelab/config.hpp"
#include "primelab/explicit_formula.hpp"

namespace primelab {

struct LinearFit {
    double m = 0.0;  // least-squares slope
    double r = 0.0;  // Pearson correlation
};

// Requires >= 3 points with non-constant abscissa (degenerate-input error).
LinearFit linear_fit(const std::vector<std::pair<double, double>>& points);

// (m/r)^2 log(b/(4 pi sigma)) / (2 sigma sqrt(pi)); r = 0 is degenerate.
double normal_variance(double m, double r, const ExperimentConfig& cfg);

// For each lambda, the number of adjacent sample pairs where s_hat - lambda
// changes sign: a grid estimate of the crossing count.  The series must be
// sorted by x and hold >= 2 samples.  Grid sampling undercounts crossings
// finer than the grid; callers should use dense grids (>= 2000 points).
std::vector<std::uint64_t> empirical_level_counts(const std::vector<SeriesSample>& series,
                                                  const std::vector<double>& lambdas);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;  // equal-width bins over [lo, hi)
    std::uint64_t dropped = 0;          // values outside [lo, hi)
};

// Equal-width binning; values outside the range are dropped and counted.
Histogram histogram(const std::vector<double>& values, std::size_t bin_count,
                    double lo, double hi);

struct GofResult {
    double stat = 0.0;     // Pearson chi-square statistic
    double p_value = 0.0;  // survival probability at stat
    std::size_t cells = 0; // bins after tail merging
};

// Pearson chi-square test of the retained histogram counts against bin
// masses of expected_density (integrated per bin, normalized to the retained
// total).  Adjacent bins are merged until every cell expects >= 5 counts;
// degrees of freedom = cells - 1 (no parameters are fitted from the data).
GofResult chi_square_gof(const Histogram& observed,
                         const std::function<double(double)>& expected_density);

// Fraction of values within [center - halfwidth, center + halfwidth].
double band_fraction(const std::vector<double>& values, double center, double halfwidth);

// Bundle emitted by the scatter command.
struct FitReport {
    double m = 0.0;
    double r = 0.0;
    double variance = 0.0;
    double band_fraction = 0.0;
    double gof_stat = 0.0;
    double p_value = 0.0;
    std::uint64_t n_points = 0;
};

}  // namespace primelab
