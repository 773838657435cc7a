#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace tsr {

// FNV-1a hash of a context label, used for substream derivation.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ull;
    }
    return h;
}

// SplitMix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic pseudo-random generator (SplitMix64 stream).
///
/// Every random decision in the toolkit flows through one of these.  Named
/// substreams are derived purely from the construction seed:
///
///     sub_seed = mix64(seed XOR fnv1a64(label))
///
/// so two modules that derive the same label from the same master seed see
/// the same stream, and consuming one stream never perturbs another.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Pure: derived from the construction seed, not from current state.
    SeededRng substream(std::string_view label) const {
        return SeededRng(mix64(seed_ ^ fnv1a64(label)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound); bound must be nonzero.
    std::size_t next_below(std::size_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t threshold = (0 - b) % b;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return static_cast<std::size_t>(r % b);
        }
    }

    // Standard normal via Box-Muller; second value of each pair is cached.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - next_double(); // (0, 1]
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace tsr
