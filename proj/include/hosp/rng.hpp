#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hosp/common.hpp"

namespace hosp {

/// Counter-based SplitMix64 stream. Draw i of a stream seeded with s is
/// mix64(s + (i + 1) * 0x9E3779B97F4A7C15), so any language that implements
/// mix64 reproduces the same numbers from the same (seed, counter).
class CounterRng {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
        : seed_(seed), counter_(counter)
    {
    }

    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() noexcept
    {
        ++counter_;
        return mix64(seed_ + counter_ * golden);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept
    {
        return n == 0 ? 0 : static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Standard normal via Box-Muller; both variates of a pair are used.
    double gaussian() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    Vector gaussian_vector(Index n, double sigma = 1.0)
    {
        Vector v(n);
        for (Index i = 0; i < n; ++i)
            v(i) = sigma * gaussian();
        return v;
    }

    Vector uniform_vector(Index n, double lo = -1.0, double hi = 1.0)
    {
        Vector v(n);
        for (Index i = 0; i < n; ++i)
            v(i) = uniform(lo, hi);
        return v;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hosp
