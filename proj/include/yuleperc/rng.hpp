#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace yuleperc {

// Identifies one replicate of a Monte Carlo experiment.  Streams for
// distinct (master_seed, replicate_index) pairs are statistically
// independent, so replicates can be farmed out to threads in any order
// and still reproduce bit-identical results.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replicate_index = 0;
};

namespace detail {

// SplitMix64 finalizer (Stafford mix13).  Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

// xoshiro256** seeded through SplitMix64.  Self-contained so that the
// same seed yields the same draws on every platform; the standard
// library distributions make no such promise.
class RandomStream {
  public:
    explicit RandomStream(SeedSpec seed) {
        std::uint64_t z = detail::mix64(seed.master_seed);
        z = detail::mix64(z ^ seed.replicate_index);
        for (auto& word : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            word = detail::mix64(z);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 1; // all-zero state is the one forbidden point
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits, so bernoulli(0) is never
    // true and bernoulli(1) always is.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, n) via Lemire's multiply-shift rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        using u128 = unsigned __int128;
        std::uint64_t x = next_u64();
        u128 m = static_cast<u128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<u128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Standard exponential; -log1p(-u) keeps u=0 finite.
    double exponential() { return -std::log1p(-uniform01()); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace yuleperc
