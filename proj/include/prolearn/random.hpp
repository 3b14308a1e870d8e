#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace prolearn {

// All randomness in the library flows through std::mt19937_64 with the
// explicit mappings below, so a seed fully determines every experiment.

/// Uniform double in [0, 1): top 53 bits of one generator draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1, 1).
inline double uniform_sym(std::mt19937_64& rng) {
    return 2.0 * uniform01(rng) - 1.0;
}

/// Uniform index in [0, n). Modulo mapping; the bias is far below any
/// effect observable at the sample counts used here.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

/// In-place Fisher-Yates shuffle driven by uniform_index.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

/// splitmix64 finalizer; derives independent sub-seeds from one base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace prolearn
