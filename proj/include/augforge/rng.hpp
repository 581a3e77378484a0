#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace augforge {

// FNV-1a 64-bit. Used for prompt hashing and seed derivation; stable across
// platforms, unlike std::hash.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed derivation for independent sub-streams (per fold, per epoch, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (salt * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
    return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    return derive_seed(seed, fnv1a64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t salt) {
    return derive_seed(derive_seed(seed, tag), salt);
}

// Small deterministic PRNG. All randomized procedures in the library go
// through this type so that identical seeds give identical results on any
// platform (std distributions are implementation-defined and unusable for
// byte-reproducible outputs).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). Multiply-shift; bias is negligible for n << 2^64.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller (one value per draw).
    double next_gauss() {
        double u1 = 1.0 - next_unit();  // (0, 1]
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace augforge
