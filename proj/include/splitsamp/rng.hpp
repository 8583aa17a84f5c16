#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "splitsamp/errors.hpp"

namespace splitsamp {

// --- Counter-based random number generation -------------------------------
//
// Every random decision in the library is drawn from a stateless mixing
// function of (master seed, stream id, counter).  Streams are keyed by a
// purpose tag plus a record / replication index, so any record's randomness
// can be regenerated in isolation.  Work can therefore be partitioned across
// any number of threads without changing a single draw.

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

// Derives a child seed; used to give each replication / subsystem its own key.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return detail::splitmix64(detail::splitmix64(seed) ^
                              detail::splitmix64(index * 0xD1342543DE82EF95ULL + 1));
}

// Purpose tags keeping independent random streams apart.
namespace stream {
inline constexpr std::uint64_t split_assignment = 0x5350'4C49'5400'0001ULL;
inline constexpr std::uint64_t reassignment = 0x5350'4C49'5400'0002ULL;
inline constexpr std::uint64_t dgp_regressor = 0x5350'4C49'5400'0003ULL;
inline constexpr std::uint64_t dgp_error = 0x5350'4C49'5400'0004ULL;
inline constexpr std::uint64_t laplace_noise = 0x5350'4C49'5400'0005ULL;
}  // namespace stream

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t id)
        : key_(detail::splitmix64(detail::splitmix64(seed) ^
                                  detail::splitmix64(purpose) ^
                                  detail::splitmix64(id * 0x9E6C63D0876A9ULL + 0xB5ULL))) {}

    std::uint64_t next_u64() {
        return detail::splitmix64(key_ ^ (counter_++ * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1): never returns an exact endpoint, so it is
    // safe to feed into inverse CDFs.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw invalid_argument_error("next_below(0)");
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() -
            (std::numeric_limits<std::uint64_t>::max() % n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Laplace(0, scale) via inverse CDF; one counter step per draw.
    double next_laplace(double scale) {
        const double u = next_open01() - 0.5;
        return -scale * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::fabs(u));
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace splitsamp
