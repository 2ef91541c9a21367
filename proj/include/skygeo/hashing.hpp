#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace skygeo {

// Deterministic 64-bit mixing/hashing used by the synthetic backends and
// benchmark generation. std::hash is not pinned across standard libraries,
// so anything whose output must be byte-identical across runs goes
// through these instead.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

/// Tiny deterministic generator (splitmix64 stream). Not for cryptography;
/// pinned output sequence regardless of platform.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_++); }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

private:
    std::uint64_t state_;
};

/// Fixed-width lowercase hex, for stable synthetic identifiers.
std::string to_hex16(std::uint64_t v);

}  // namespace skygeo
