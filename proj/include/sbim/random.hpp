#ifndef SBIM_RANDOM_HPP
#define SBIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace sbim {

/// splitmix64 finalizer (Steele, Lea and Flood)
constexpr std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// seed of trial t: splitmix64(master ^ splitmix64(t))
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t)
{
    return splitmix64(master ^ splitmix64(t));
}

/// uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw
inline double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace sbim

#endif
