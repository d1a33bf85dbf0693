#pragma once

#include <array>
#include <cstdint>
#include <cmath>

namespace hypdla {

/// Philox4x32-10 counter-based generator.
///
/// Key   = 64-bit run seed.
/// Counter words = (block, stream0, stream1, stream2): a 96-bit structured
/// substream id and a 32-bit block counter within the substream. Substreams
/// with distinct (stream0, stream1, stream2) are independent by construction,
/// which is what makes batched Monte Carlo reproducible under any parallel
/// schedule: work item i always draws from stream (..., i).
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t s0, std::uint64_t s1 = 0, std::uint64_t s2 = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_{fold(s0), fold(s1), fold(s2)} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1); never returns an endpoint.
    double u01_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    /// Exponential with the given mean, strictly positive.
    double exponential(double mean) { return -mean * std::log(u01_open()); }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(u01() * static_cast<double>(n)) % n;
    }

    /// One Philox4x32-10 block for the given key/counter (exposed for tests).
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 2>& key,
                                              const std::array<std::uint32_t, 4>& ctr) {
        std::array<std::uint32_t, 4> x = ctr;
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * x[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * x[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return x;
    }

  private:
    static std::uint32_t fold(std::uint64_t v) {
        return static_cast<std::uint32_t>(v) ^ static_cast<std::uint32_t>(v >> 32);
    }

    void refill() {
        buf_ = block(key_, {counter_++, stream_[0], stream_[1], stream_[2]});
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 3> stream_;
    std::uint32_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

/// Factory for the substreams of one logical phase: (seed, a, b) fixed, trial index varies.
struct StreamFamily {
    std::uint64_t seed = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    RandomStream stream(std::uint64_t trial) const { return RandomStream(seed, a, b, trial); }
};

/// Phase tags used to carve substream ids out of one run seed.
namespace stream_phase {
inline constexpr std::uint64_t kCapacity = 1;
inline constexpr std::uint64_t kAttach = 2;
inline constexpr std::uint64_t kClock = 3;
inline constexpr std::uint64_t kBatch = 4;
}  // namespace stream_phase

}  // namespace hypdla
