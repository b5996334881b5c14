#pragma once

#include <cstdint>
#include <random>

namespace mixcore {

// Finalizer of the splitmix64 generator.  Bijective on 64-bit words, used both
// for seed derivation and as the per-key hash stream in the retrieval module.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Order-sensitive combination of up to three words into one well-mixed word.
// Trial seeds are derived as hash64(base_seed, density_index, trial_index) so
// every trial is reproducible in isolation, independent of scheduling.
inline uint64_t hash64(uint64_t a, uint64_t b, uint64_t c) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

// FNV-1a over a byte string; the retrieval module hashes keys to a digest
// before deriving cell indices from it.
inline uint64_t fnv1a64(const uint8_t* data, size_t len) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

// Unbiased draw from [0, bound) using multiply-then-reject.  std::mt19937_64
// is fully specified by the standard, but std::uniform_int_distribution is
// not, so the reduction is done by hand to keep streams portable.
inline uint64_t bounded_u64(std::mt19937_64& rng, uint64_t bound) {
    unsigned __int128 prod = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<uint64_t>(prod);
    if (low < bound) {
        const uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            prod = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<uint64_t>(prod);
        }
    }
    return static_cast<uint64_t>(prod >> 64);
}

// Map a hash word to [0, bound) by taking the high part of the 128-bit
// product.  Bias is at most bound/2^64, far below anything observable here.
inline uint64_t map_to_range(uint64_t word, uint64_t bound) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(word) * bound) >> 64);
}

// Uniform double in [0,1) from the top 53 bits of a hash word.
inline double to_unit_interval(uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace mixcore
