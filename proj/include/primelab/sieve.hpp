#pragma once
// Segmented sieve for the von Mangoldt function and for prime counts on
// windows.  Base primes up to sqrt(capacity) are precomputed once; each
// queried window is sieved on the fly by marking smallest prime factors per
// segment, so memory stays O(segment) even when capacity is 1e9.
//
//   Lambda(m) = log p   if m = p^k for a prime p, k >= 1
//             = 0       otherwise
//
// Prime powers are detected exactly by repeated division by the smallest
// prime factor; the stored value is log(p), never log(p^k).
#include <cstdint>
#include <vector>

namespace primelab {

// Lambda values on the integer window [center - half_width, center + half_width].
struct LambdaWindow {
    std::uint64_t center = 0;
    std::uint64_t half_width = 0;
    // values[i] = Lambda(center - half_width + i), size 2*half_width + 1
    std::vector<double> values;

    // Value at signed offset j in [-half_width, half_width].
    double at(std::int64_t offset) const;
    // Sum over the window, psi(center+half_width) - psi(center-half_width-1).
    double sum() const;
};

class Sieve {
public:
    // capacity: largest integer any window may reach (<= 2^32).
    // segment_len: integers sieved per pass; tunable for cache friendliness.
    explicit Sieve(std::uint64_t capacity, std::uint64_t segment_len = 1u << 20);

    // Exact Lambda values on [n - half_width, n + half_width]; entries at
    // integers <= 1 are 0.  Requires n >= half_width; throws
    // error(errc::capacity) when the window end exceeds the capacity.
    LambdaWindow lambda_window(std::uint64_t n, std::uint64_t half_width) const;

    // pi(x + sigma) - pi(x - sigma): primes in the half-open real interval
    // (x - sigma, x + sigma].  Requires x - sigma >= 0; capacity error as above.
    std::uint64_t prime_count_window(double x, double sigma) const;

    std::uint64_t capacity() const { return capacity_; }

private:
    std::uint64_t capacity_;
    std::uint64_t segment_len_;
    std::vector<std::uint32_t> base_primes_;

    // Smallest prime factor <= sqrt(hi-1) for each m in [lo, hi); 0 means no
    // such factor, i.e. m is 0, 1, or prime.
    std::vector<std::uint32_t> spf_window(std::uint64_t lo, std::uint64_t hi) const;

    void check_capacity(std::uint64_t end) const;
};

}  // namespace primelab
