#pragma once

#include <cstdint>
#include <string_view>

namespace ddclock {

// Small deterministic RNG (splitmix64). All randomness in the toolkit flows
// from one master seed; per-purpose streams are derived with a fixed text
// label so that adding a consumer never perturbs the others.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view text);

// Derives an independent stream seed from (master seed, label).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label);

} // namespace ddclock
