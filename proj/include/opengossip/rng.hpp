// Seeded, splittable random streams. Each (seed, stream_id) pair yields a
// bit-reproducible sequence; distinct stream ids give independent streams,
// so ensemble replicates never share draws.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace opengossip {

namespace detail {
// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed),
          stream_id_(stream_id),
          state_(detail::mix64(detail::mix64(seed + 0x9E3779B97F4A7C15ULL) + stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    // uniform in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + next_unit() * (b - a); }

    bool bernoulli(double p) { return next_unit() < p; }

    // uniform in {0, ..., n-1} via the multiply-high reduction
    std::uint64_t below(std::uint64_t n) {
#ifdef __SIZEOF_INT128__
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
#else
        return next_u64() % n;
#endif
    }

    // standard normal via Box-Muller
    double gaussian() {
        const double u1 = 1.0 - next_unit();  // (0, 1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
};

}  // namespace opengossip
