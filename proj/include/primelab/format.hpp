#pragma once
// Deterministic number formatting for CSV/JSON artifacts.  Uses the shortest
// representation that round-trips to the exact double (std::to_chars), so two
// runs that compute identical doubles emit byte-identical files.
#include <cstdint>
#include <string>

namespace primelab {

// Shortest round-trip decimal form of x ("1.26", "3.0351839575518421e-05").
std::string fmt_double(double x);

std::string fmt_int(std::int64_t x);
std::string fmt_uint(std::uint64_t x);

}  // namespace primelab
