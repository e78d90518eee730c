#pragma once

#include <cstdint>

namespace planted {

// 64-bit finalizer of the splitmix64 generator (Steele, Lea, Vigna).
// All randomness in this library flows through this one mixing function,
// so every output is reproducible from (seed, draw index) alone.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Splits one 64-bit seed into independent streams. Chained absorption:
// each argument is mixed in before the next. Collision-resistant enough
// for seed derivation; not a cryptographic construction.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index) {
    std::uint64_t h = mix64(master + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ mix64(tag + 0x9E3779B97F4A7C15ull));
    h = mix64(h ^ index);
    return h;
}

// splitmix64: counter + finalizer. Passes BigCrush; period 2^64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound); unbiased via rejection. bound ≥ 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t lim = (-bound) % bound; // (2^64 - bound) mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= lim) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace planted
