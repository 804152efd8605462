#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace grv {

/// Derives an independent seed for a named substream of a root seed, so that
/// e.g. "train" and "eval:link:3" draw from unrelated generators.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view name) {
    // FNV-1a over the name, mixed with the root via splitmix64 finalization.
    std::uint64_t h = 14695981039346656037ull;
    for (char ch : name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::uint64_t z = root + 0x9e3779b97f4a7c15ull + h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::mt19937_64 make_rng(std::uint64_t root, std::string_view name) {
    return std::mt19937_64(substream_seed(root, name));
}

} // namespace grv
