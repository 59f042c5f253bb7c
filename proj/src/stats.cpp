#include "primelab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"
#include "primelab/quadrature.hpp"
#include "primelab/specfun.hpp"

namespace primelab {

namespace {
constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double SQRT_PI = 1.7724538509055160272981674833411;
}  // namespace

// -------------------------------------------------------------- linear_fit -

LinearFit linear_fit(const std::vector<std::pair<double, double>>& points) {
    std::size_t n = points.size();
    if (n < 3) throw error(errc::domain, "linear_fit: needs at least 3 points");
    double mx = 0.0, my = 0.0;
    for (auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= (double)n;
    my /= (double)n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (auto& [x, y] : points) {
        double dx = x - mx, dy = y - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0)
        throw error(errc::domain, "linear_fit: degenerate input, all abscissae equal");
    LinearFit fit;
    fit.m = sxy / sxx;
    // A constant ordinate has no linear association; report r = 0.
    fit.r = syy == 0.0 ? 0.0 : sxy / std::sqrt(sxx * syy);
    return fit;
}

// --------------------------------------------------------- normal_variance -

double normal_variance(double m, double r, const ExperimentConfig& cfg) {
    if (r == 0.0)
        throw error(errc::domain, "normal_variance: degenerate input, r must be nonzero");
    double l = std::log(cfg.b / (4.0 * PI * cfg.sigma));
    if (!(l > 0.0))
        throw error(errc::domain, "normal_variance: b <= 4*pi*sigma, variance undefined");
    double q = m / r;
    return q * q * l / (2.0 * cfg.sigma * SQRT_PI);
}

// --------------------------------------------------- empirical_level_counts -

std::vector<std::uint64_t> empirical_level_counts(const std::vector<SeriesSample>& series,
                                                  const std::vector<double>& lambdas) {
    if (series.size() < 2)
        throw error(errc::validation, "empirical_level_counts: needs >= 2 samples");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].x < series[i - 1].x)
            throw error(errc::validation,
                        "empirical_level_counts: series not sorted by x at index " +
                            fmt_uint(i));
    std::vector<std::uint64_t> counts(lambdas.size(), 0);
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        double lam = lambdas[li];
        std::uint64_t c = 0;
        int prev_sign = 0;
        for (const SeriesSample& s : series) {
            double d = s.s_hat - lam;
            int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (sign == 0) {
                ++c;  // an exact hit counts once, like the crossing counter
                prev_sign = 0;
                continue;
            }
            if (prev_sign != 0 && sign != prev_sign) ++c;
            prev_sign = sign;
        }
        counts[li] = c;
    }
    return counts;
}

// ---------------------------------------------------------------- histogram -

Histogram histogram(const std::vector<double>& values, std::size_t bin_count, double lo,
                    double hi) {
    if (bin_count == 0) throw error(errc::validation, "histogram: bin_count must be >= 1");
    if (!(lo < hi)) throw error(errc::validation, "histogram: range must satisfy lo < hi");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bin_count, 0);
    double width = (hi - lo) / (double)bin_count;
    for (double v : values) {
        if (v < lo || v >= hi) {
            ++h.dropped;
            continue;
        }
        std::size_t idx = (std::size_t)((v - lo) / width);
        if (idx >= bin_count) idx = bin_count - 1;  // guard the hi-epsilon edge
        ++h.counts[idx];
    }
    return h;
}

// ----------------------------------------------------------- chi_square_gof -

GofResult chi_square_gof(const Histogram& observed,
                         const std::function<double(double)>& expected_density) {
    std::size_t bins = observed.counts.size();
    std::uint64_t total = 0;
    for (std::uint64_t c : observed.counts) total += c;
    if (total == 0)
        throw error(errc::validation, "chi_square_gof: histogram holds no retained values");

    // Expected mass per bin: density integrated across the bin, then
    // normalized so the expectations sum to the retained count.
    double width = (observed.hi - observed.lo) / (double)bins;
    std::vector<double> mass(bins);
    double mass_sum = 0.0;
    quadrature_options opt;
    opt.rel_tol = 1e-10;
    opt.abs_floor = 1e-14;
    for (std::size_t i = 0; i < bins; ++i) {
        double blo = observed.lo + width * (double)i;
        double bhi = i + 1 == bins ? observed.hi : blo + width;
        mass[i] = integrate(expected_density, blo, bhi, opt);
        if (mass[i] < 0.0)
            throw error(errc::validation, "chi_square_gof: expected density is negative");
        mass_sum += mass[i];
    }
    if (!(mass_sum > 0.0))
        throw error(errc::validation, "chi_square_gof: expected density vanishes on range");

    // Merge adjacent bins until each retained cell expects >= 5 counts; for a
    // unimodal target this collapses the tails, which is the standard remedy.
    std::vector<double> exp_cells;
    std::vector<double> obs_cells;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        e_acc += (double)total * mass[i] / mass_sum;
        o_acc += (double)observed.counts[i];
        if (e_acc >= 5.0) {
            exp_cells.push_back(e_acc);
            obs_cells.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_cells.empty())
            throw error(errc::validation,
                        "chi_square_gof: too few points, no cell reaches 5 expected counts");
        exp_cells.back() += e_acc;
        obs_cells.back() += o_acc;
    }
    if (exp_cells.size() < 2)
        throw error(errc::validation,
                    "chi_square_gof: too few points for a test, only one usable cell");

    GofResult res;
    res.cells = exp_cells.size();
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
        double d = obs_cells[i] - exp_cells[i];
        res.stat += d * d / exp_cells[i];
    }
    // No parameters are estimated from the sample, so df = cells - 1.
    double df = (double)(res.cells - 1);
    res.p_value = gamma_q(df / 2.0, res.stat / 2.0);
    return res;
}

// ------------------------------------------------------------ band_fraction -

double band_fraction(const std::vector<double>& values, double center, double halfwidth) {
    if (values.empty()) throw error(errc::validation, "band_fraction: empty input");
    std::uint64_t in = 0;
    for (double v : values)
        if (v >= center - halfwidth && v <= center + halfwidth) ++in;
    return (double)in / (double)values.size();
}

}  // namespace primelab
