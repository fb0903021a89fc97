#pragma once

// Reproducible random streams.
//
// Every Monte Carlo trial owns an independent xoshiro256** generator whose
// 256-bit state is a pure function of (master seed, trial index): word k of
// the state is splitmix64(key ^ ((index·4 + k + 1)·φ64)) with
// key = splitmix64(seed). Streams therefore do not depend on how trials are
// scheduled across threads, and results are reproducible from the seed alone.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace srgc {

namespace detail {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
{
    z += kGolden64;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
{
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class Rng {
public:
    /// Stream for trial `index` under master `seed`.
    static Rng for_trial(std::uint64_t seed, std::uint64_t index) noexcept
    {
        const std::uint64_t key = detail::splitmix64(seed);
        Rng r{RawTag{}};
        for (std::uint64_t k = 0; k < 4; ++k) {
            r.s_[k] = detail::splitmix64(key ^ ((index * 4 + k + 1) * detail::kGolden64));
        }
        if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[0] = 1;
        return r;
    }

    explicit Rng(std::uint64_t seed = 0) noexcept : Rng(for_trial(seed, ~std::uint64_t{0})) {}

    std::uint64_t next_u64() noexcept
    {
        const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by the Marsaglia polar method.
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * signed_unit();
            v = 2.0 * signed_unit();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

private:
    struct RawTag {};
    explicit Rng(RawTag) noexcept {}

    // Uniform on [-0.5, 0.5).
    double signed_unit() noexcept
    {
        return static_cast<double>(static_cast<std::int64_t>(next_u64()) >> 11) * 0x1.0p-53;
    }

    std::uint64_t s_[4] = {0, 0, 0, 0};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace srgc
