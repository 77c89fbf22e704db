#pragma once

#include <cstdint>
#include <random>

namespace rxva {

enum Stream : std::uint64_t { rates = 1, cpty_default = 2, firm_default = 3, funding = 4 };

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent engine per (seed, stream, path) so results never depend on scheduling.
inline std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t path) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
    h = splitmix64(h ^ path);
    return std::mt19937_64(h);
}

// Uniform on the open interval (0, 1).
inline double open_uniform(std::mt19937_64& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rxva
