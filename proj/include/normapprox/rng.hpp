#pragma once

#include <array>
#include <boost/random/normal_distribution.hpp>
#include <cstdint>
#include <limits>

namespace normapprox::rng {

/// Independent purposes draw from disjoint stream families.
enum class Stream : std::uint64_t {
    Sphere = 1,
    SeolCheunFit = 2,
    Coupon = 3,
    Auxiliary = 4,
    FixedBudget = 5,
};

/// Vectors (or trials) per stream block. Point i of a stream always comes from
/// block i / kBlockLength, so results never depend on how work is split.
inline constexpr std::uint64_t kBlockLength = 16384;

/// SplitMix64 finalizer; used to derive block keys and engine state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman and Vigna). Satisfies UniformRandomBitGenerator.
class Engine {
public:
    using result_type = std::uint64_t;

    explicit Engine(std::uint64_t key) noexcept
    {
        for (auto& word : s_)
            word = splitmix64(key);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

/// Engine for one block, keyed by hashing (seed, stream, dimension, block).
Engine block_engine(std::uint64_t seed, Stream stream, std::uint64_t dimension, std::uint64_t block);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) noexcept
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-and-reject).
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) noexcept;

/// Standard normal deviates (ziggurat). std::normal_distribution is
/// implementation-defined, so the Boost algorithm is used for reproducibility.
class GaussianSource {
public:
    double operator()(Engine& engine) { return dist_(engine); }
    void reset() { dist_.reset(); }

private:
    boost::random::normal_distribution<double> dist_;
};

}  // namespace normapprox::rng
