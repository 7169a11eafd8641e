#pragma once

#include <cstdint>

namespace smrank {

// SplitMix64: tiny, stable across platforms, good enough statistics for
// sampling field elements.  Pinned here so instances regenerate bit-exactly
// from (params, q, seed) forever.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in {0, ..., bound-1} by rejection
    std::uint32_t below(std::uint32_t bound) {
        const std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<std::uint32_t>(v % bound);
    }

private:
    std::uint64_t state_;
};

// stable per-trial seed derivation from a master seed
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xA3EC647659359ACDULL * (index + 1)));
    return g.next();
}

} // namespace smrank
