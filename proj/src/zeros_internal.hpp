#pragma once
// Internal sharing between zeros.cpp (file loading) and fetch.cpp (network
// caching): both parse and validate tables with identical rules.
#include <istream>
#include <string>
#include <vector>

namespace primelab {

// Parses ordinates (one per line, '#' and blank lines skipped), enforcing
// positivity and strict ascent; errors carry origin:line.
std::vector<double> parse_zero_lines(std::istream& in, const std::string& origin);

// Table-level invariants: nonempty, first zero at 14.134725 +- 1e-3, count
// tracks the Riemann-von Mangoldt asymptotic within 3 on a grid.
void validate_zero_table(const std::vector<double>& heights, const std::string& origin);

}  // namespace primelab
