#include "primelab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primelab/errors.hpp"
#include "primelab/format.hpp"

namespace primelab {

// ---------------------------------------------------------- LambdaWindow --

double LambdaWindow::at(std::int64_t offset) const {
    std::int64_t h = (std::int64_t)half_width;
    if (offset < -h || offset > h)
        throw error(errc::validation, "LambdaWindow::at: offset " + fmt_int(offset) +
                                          " outside [-" + fmt_uint(half_width) + ", " +
                                          fmt_uint(half_width) + "]");
    return values[(std::size_t)(offset + h)];
}

double LambdaWindow::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

// ------------------------------------------------------------------ Sieve -

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    std::uint64_t r = (std::uint64_t)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

Sieve::Sieve(std::uint64_t capacity, std::uint64_t segment_len)
    : capacity_(capacity), segment_len_(segment_len) {
    if (capacity < 2) throw error(errc::validation, "Sieve: capacity must be >= 2");
    if (capacity > (1ull << 32))
        throw error(errc::validation, "Sieve: capacity above 2^32 is unsupported");
    if (segment_len < 64) throw error(errc::validation, "Sieve: segment_len must be >= 64");
    // Simple Eratosthenes for the base primes up to sqrt(capacity).
    std::uint64_t limit = isqrt_u64(capacity);
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        base_primes_.push_back((std::uint32_t)p);
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
}

void Sieve::check_capacity(std::uint64_t end) const {
    if (end > capacity_)
        throw error(errc::capacity, "sieve: window end " + fmt_uint(end) +
                                        " exceeds capacity " + fmt_uint(capacity_));
}

// Smallest prime factor p <= sqrt(hi-1) for each m in [lo, hi); 0 when m has
// no such factor (m prime, 1, or 0).  Sieved in segments of segment_len_.
std::vector<std::uint32_t> Sieve::spf_window(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint32_t> spf(hi - lo, 0);
    for (std::uint64_t seg = lo; seg < hi; seg += segment_len_) {
        std::uint64_t seg_hi = std::min(seg + segment_len_, hi);
        std::uint64_t root = isqrt_u64(seg_hi - 1);
        for (std::uint32_t p : base_primes_) {
            if (p > root) break;
            std::uint64_t start = std::max((std::uint64_t)p * p, (seg + p - 1) / p * p);
            for (std::uint64_t m = start; m < seg_hi; m += p) {
                std::uint32_t& slot = spf[m - lo];
                if (slot == 0) slot = p;
            }
        }
    }
    return spf;
}

LambdaWindow Sieve::lambda_window(std::uint64_t n, std::uint64_t half_width) const {
    if (n < half_width)
        throw error(errc::validation, "lambda_window: window extends below 0 (n=" +
                                          fmt_uint(n) + ", half_width=" + fmt_uint(half_width) +
                                          ")");
    check_capacity(n + half_width);
    std::uint64_t lo = n - half_width;
    std::uint64_t hi = n + half_width + 1;
    std::vector<std::uint32_t> spf = spf_window(lo, hi);

    LambdaWindow w;
    w.center = n;
    w.half_width = half_width;
    w.values.assign(hi - lo, 0.0);
    for (std::uint64_t m = std::max<std::uint64_t>(lo, 2); m < hi; ++m) {
        std::uint32_t p = spf[m - lo];
        if (p == 0) {
            // No factor <= sqrt: m is prime.
            w.values[m - lo] = std::log((double)m);
        } else {
            // Divide out p; Lambda(m) = log p only if nothing else remains.
            std::uint64_t q = m;
            while (q % p == 0) q /= p;
            if (q == 1) w.values[m - lo] = std::log((double)p);
        }
    }
    return w;
}

std::uint64_t Sieve::prime_count_window(double x, double sigma) const {
    if (!(sigma > 0.0)) throw error(errc::validation, "prime_count_window: sigma must be > 0");
    if (x - sigma < 0.0)
        throw error(errc::validation, "prime_count_window: x - sigma must be >= 0");
    // Primes in (x - sigma, x + sigma]: integers floor(x-sigma)+1 .. floor(x+sigma).
    std::uint64_t lo = (std::uint64_t)std::floor(x - sigma) + 1;
    std::uint64_t hi_incl = (std::uint64_t)std::floor(x + sigma);
    check_capacity(hi_incl);
    if (hi_incl < 2 || hi_incl < lo) return 0;
    lo = std::max<std::uint64_t>(lo, 2);
    std::vector<std::uint32_t> spf = spf_window(lo, hi_incl + 1);
    std::uint64_t count = 0;
    for (std::uint64_t m = lo; m <= hi_incl; ++m)
        if (spf[m - lo] == 0) ++count;
    return count;
}

}  // namespace primelab
