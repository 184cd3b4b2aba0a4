#pragma once

#include <cstdint>

namespace gaussrd {

// Counter-based deterministic generator (splitmix64 finalizer). Every draw is
// addressed by (stream, counter), so results do not depend on call order and
// concurrent evaluation cannot perturb them.
struct CounterRng {
    std::uint64_t seed = 42;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double u01(std::uint64_t stream, std::uint64_t counter) const {
        std::uint64_t z = mix(mix(seed ^ 0x6a09e667f3bcc909ull * stream) + counter);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t stream, std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * u01(stream, counter);
    }
};

}  // namespace gaussrd
