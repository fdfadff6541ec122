#pragma once

#include <cstdint>
#include <vector>

namespace pin {

/**
 * Philox4x32-10 counter-based generator.
 *
 * Streams are addressed by (seed, stream): the seed forms the key, the
 * stream id the upper counter words. Draws with the same address are
 * identical regardless of evaluation order or worker count, which is what
 * the sampling routines rely on for reproducibility.
 */
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    /// Raw counter/key construction, for known-answer tests.
    Philox(const std::uint32_t counter[4], const std::uint32_t key[2])
        : key0_(key[0]), key1_(key[1]),
          ctr0_(counter[0]), ctr1_(counter[1]), ctr2_(counter[2]), ctr3_(counter[3]) {}

    std::uint32_t next_u32() {
        if (have_ == 0) refill();
        return out_[--have_];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased integer in [0, n), n >= 1, by rejection.
    std::uint64_t below(std::uint64_t n);

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal();

    // UniformRandomBitGenerator interface.
    using result_type = std::uint32_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffu; }
    result_type operator()() { return next_u32(); }

private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint32_t ctr0_ = 0, ctr1_ = 0, ctr2_, ctr3_;
    std::uint32_t out_[4] = {};
    int have_ = 0;
};

/// Draws k distinct elements from pool (uniformly, order not meaningful);
/// result is sorted ascending. Requires 0 <= k <= pool.size().
std::vector<int> sample_without_replacement(Philox& rng, const std::vector<int>& pool, int k);

}  // namespace pin
