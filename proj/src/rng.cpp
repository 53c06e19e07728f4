#include "normapprox/rng.hpp"

#include <cmath>

namespace normapprox::rng {

__extension__ typedef unsigned __int128 uint128;

Engine block_engine(std::uint64_t seed, Stream stream, std::uint64_t dimension, std::uint64_t block)
{
    std::uint64_t key = seed;
    std::uint64_t h = splitmix64(key);
    for (std::uint64_t word : {static_cast<std::uint64_t>(stream), dimension, block}) {
        key = h ^ word;
        h = splitmix64(key);
    }
    return Engine(h);
}

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) noexcept
{
    uint128 product = static_cast<uint128>(engine()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<uint128>(engine()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace normapprox::rng
