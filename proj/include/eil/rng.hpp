#pragma once

/*
 * Counter-based deterministic random source: splitmix64 applied to
 * seed + counter * golden. Every (seed, stream, counter) triple is a
 * pure function of its inputs, so sample i draws the same values no
 * matter how work is partitioned across threads. Streams are spaced
 * 2^32 counters apart.
 */

#include <cstdint>

namespace eil {

inline constexpr char kPrngName[] = "splitmix64-ctr/v1";

namespace detail {

inline std::uint64_t splitmix64_mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

} // namespace detail

class RngStream {
    std::uint64_t seed_;
    std::uint64_t ctr_;

public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), ctr_(stream_id << 32) {}

    std::uint64_t next() {
        ctr_ += 1;
        return detail::splitmix64_mix(seed_ + ctr_ * 0x9E3779B97F4A7C15ULL);
    }

    // uniform in [0, 1) with 53 random bits
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform on {0, ..., m} (m small; modulo bias is irrelevant here)
    std::uint64_t next_below(std::uint64_t m_plus_one) {
        return next() % m_plus_one;
    }
};

} // namespace eil
