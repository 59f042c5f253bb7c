#pragma once
// Tables of imaginary parts of nontrivial zeta zeros: loading, validation,
// the counting function N(x), and its Riemann-von Mangoldt asymptotic
//   N(x) ~ (x/2pi) log(x/2pi) - x/2pi + 7/8.
//
// File format: UTF-8 text, one positive decimal ordinate per line, strictly
// ascending; lines starting with '#' and blank lines are ignored.  Values are
// parsed with round-to-nearest-double semantics.
#include <cstddef>
#include <string>
#include <vector>

namespace primelab {

struct ZeroTable {
    std::vector<double> heights;  // ascending, all > 14
    std::string source;           // file path or URL provenance
    double max_height = 0.0;      // last element; 0 for an empty table
};

// Reads zeros with height <= max_height and validates the table:
//   parse errors carry the 1-based line number;
//   the sequence must be strictly ascending with all entries > 14;
//   the first entry must be within 1e-3 of 14.134725;
//   the count must track the Riemann-von Mangoldt asymptotic within 3
//   on a grid over (20, max_height].
// If required_height > 0 the file itself must reach that height, otherwise
// an insufficient-table error names required vs available height.  (Without
// required_height a short file simply yields a short table.)
ZeroTable load_zeros(const std::string& path, double max_height,
                     double required_height = 0.0);

// Writes the table in the file format above (with a '#' provenance header).
// load_zeros(write_zeros(t)) reproduces heights exactly: entries are printed
// in shortest round-trip form.
void write_zeros(const std::string& path, const ZeroTable& table);

// Number of heights <= x.  Throws error(errc::insufficient_table) when
// x exceeds table.max_height (the answer would undercount).
std::size_t zero_counting_N(double x, const ZeroTable& table);

// (x/2pi) log(x/2pi) - x/2pi + 7/8 for x > 2pi; domain error otherwise.
double rvm_asymptotic(double x);

struct FetchOptions {
    bool offline = false;       // forbid network; cache hit required
    int max_attempts = 3;       // retries for transient network failures
    int connect_timeout_s = 10;
    int read_timeout_s = 120;
};

// Downloads the first `count` zero ordinates from `url` (an Odlyzko-style
// plain text table), stores them in cache_dir with a .sha256 sidecar, and
// returns the cached path.  A warm cache is served without network traffic.
// Checksum mismatch raises a corrupt-cache error telling the caller to
// remove the entry; network failures raise retryable network errors.
std::string fetch_zeros(const std::string& url, const std::string& cache_dir,
                        std::size_t count, const FetchOptions& opt = {});

}  // namespace primelab
