#pragma once
// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3").  Stateless: output = f(key, counter), so a
// stream keyed by (seed, stream, index) is reproducible in any evaluation
// order.  Monte Carlo trials draw their phases from their own stream and can
// therefore run in parallel without changing results.
#include <array>
#include <cstdint>

namespace primelab {

inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
        std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
        ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
               std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

// One block = two 64-bit words.  Counter layout: (index, stream), key = seed.
inline std::array<std::uint64_t, 2> philox_block(std::uint64_t seed, std::uint64_t stream,
                                                 std::uint64_t index) {
    auto x = philox4x32_10({std::uint32_t(index), std::uint32_t(index >> 32),
                            std::uint32_t(stream), std::uint32_t(stream >> 32)},
                           {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    return {std::uint64_t(x[0]) << 32 | x[1], std::uint64_t(x[2]) << 32 | x[3]};
}

inline std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return philox_block(seed, stream, index >> 1)[index & 1];
}

// Uniform on the open interval (0,1): (k + 1/2) / 2^53 with k in [0, 2^53).
inline double philox_open01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return (double(philox_u64(seed, stream, index) >> 11) + 0.5) * 0x1p-53;
}

inline double philox_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                             double lo, double hi) {
    return lo + (hi - lo) * philox_open01(seed, stream, index);
}

// Unbiased-enough integer draw in [lo, hi] via 128-bit multiply-shift.
inline std::uint64_t philox_uniform_u64(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t index, std::uint64_t lo, std::uint64_t hi) {
    unsigned __int128 span = (unsigned __int128)(hi - lo + 1);
    std::uint64_t x = philox_u64(seed, stream, index);
    return lo + std::uint64_t((span * x) >> 64);
}

}  // namespace primelab
