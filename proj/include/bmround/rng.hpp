#pragma once

#include <cstdint>

// Deterministic RNG with explicit integer-to-double conversion. The standard
// <random> distributions are implementation-defined, which would break the
// byte-identical-output contract across toolchains, so we keep our own.

namespace bmr {

// splitmix64: tiny, well-mixed, and stable everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Independent child stream; used to resample degenerate draws without
    // disturbing the parent sequence.
    Rng substream(std::uint64_t idx) const {
        return Rng(state_ ^ (0xD1B54A32D192ED03ull * (idx + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace bmr
