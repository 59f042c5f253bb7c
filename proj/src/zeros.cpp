#include "primelab/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"
#include "zeros_internal.hpp"

namespace primelab {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;
constexpr double FIRST_ZERO = 14.134725;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<double> parse_zero_lines(std::istream& in, const std::string& origin) {
    std::vector<double> heights;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        double v = 0.0;
        auto res = std::from_chars(body.data(), body.data() + body.size(), v);
        if (res.ec != std::errc() || res.ptr != body.data() + body.size())
            throw error(errc::parse, origin + ":" + fmt_uint(lineno) +
                                         ": not a decimal ordinate: '" + std::string(body) +
                                         "'");
        if (!std::isfinite(v) || v <= 0.0)
            throw error(errc::parse, origin + ":" + fmt_uint(lineno) +
                                         ": ordinate must be a positive finite real");
        if (!heights.empty() && v <= heights.back())
            throw error(errc::parse, origin + ":" + fmt_uint(lineno) +
                                         ": non-ascending ordinate " + fmt_double(v) +
                                         " after " + fmt_double(heights.back()));
        heights.push_back(v);
    }
    return heights;
}

// Shared by load_zeros and fetch_zeros (which validates before caching).
void validate_zero_table(const std::vector<double>& heights, const std::string& origin) {
    if (heights.empty())
        throw error(errc::validation, origin + ": table contains no zeros");
    if (heights.front() <= 14.0)
        throw error(errc::validation, origin + ": first ordinate " +
                                          fmt_double(heights.front()) +
                                          " is not > 14; not a zeta zero table");
    if (std::fabs(heights.front() - FIRST_ZERO) > 1e-3)
        throw error(errc::validation,
                    origin + ": first ordinate " + fmt_double(heights.front()) +
                        " is not within 1e-3 of " + fmt_double(FIRST_ZERO) +
                        "; table must start at the first zero");
    // Riemann-von Mangoldt sanity: the count must track the asymptotic
    // within 3 on a grid over (20, max]; catches thinned or duplicated rows.
    double max = heights.back();
    if (max > 21.0) {
        for (int i = 1; i <= 100; ++i) {
            double x = 20.0 + (max - 20.0) * i / 100.0;
            auto it = std::upper_bound(heights.begin(), heights.end(), x);
            double n = (double)(it - heights.begin());
            double q = x / TWO_PI;
            double asym = q * std::log(q) - q + 0.875;
            if (std::fabs(n - asym) > 3.0)
                throw error(errc::validation,
                            origin + ": zero count " + fmt_double(n) + " at height " +
                                fmt_double(x) + " deviates from the Riemann-von Mangoldt " +
                                "asymptotic " + fmt_double(asym) + " by more than 3");
        }
    }
}

ZeroTable load_zeros(const std::string& path, double max_height, double required_height) {
    if (!(max_height > 0.0))
        throw error(errc::validation, "load_zeros: max_height must be positive");
    std::ifstream in(path);
    if (!in) throw error(errc::io, "load_zeros: cannot open " + path);
    std::vector<double> all = parse_zero_lines(in, path);
    if (in.bad()) throw error(errc::io, "load_zeros: read error on " + path);
    validate_zero_table(all, path);
    double available = all.back();
    if (required_height > 0.0 && available < required_height)
        throw error(errc::insufficient_table,
                    path + ": table reaches height " + fmt_double(available) +
                        " but the run requires " + fmt_double(required_height));

    ZeroTable t;
    t.source = path;
    auto cut = std::upper_bound(all.begin(), all.end(), max_height);
    t.heights.assign(all.begin(), cut);
    if (t.heights.empty())
        throw error(errc::insufficient_table,
                    path + ": no zeros at or below max_height " + fmt_double(max_height));
    t.max_height = t.heights.back();
    return t;
}

void write_zeros(const std::string& path, const ZeroTable& table) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error(errc::io, "write_zeros: cannot open " + path + " for writing");
    out << "# imaginary parts of nontrivial zeta zeros, ascending\n";
    if (!table.source.empty()) out << "# source: " << table.source << "\n";
    for (double g : table.heights) out << fmt_double(g) << "\n";
    out.flush();
    if (!out) throw error(errc::io, "write_zeros: write error on " + path);
}

std::size_t zero_counting_N(double x, const ZeroTable& table) {
    if (!(x > 0.0)) throw error(errc::validation, "zero_counting_N: x must be positive");
    if (x > table.max_height)
        throw error(errc::insufficient_table,
                    "zero_counting_N: x=" + fmt_double(x) + " exceeds table height " +
                        fmt_double(table.max_height));
    return (std::size_t)(std::upper_bound(table.heights.begin(), table.heights.end(), x) -
                         table.heights.begin());
}

double rvm_asymptotic(double x) {
    if (!(x > TWO_PI))
        throw error(errc::domain,
                    "rvm_asymptotic: x must exceed 2*pi, got " + fmt_double(x));
    double q = x / TWO_PI;
    return q * std::log(q) - q + 0.875;
}

}  // namespace primelab
