#ifndef RECORDS_RNG_HPP
#define RECORDS_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace records {

// SplitMix64 finalizer (Vigna / Steele-Lea-Flood). Used for seed expansion
// and child-stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += UINT64_C(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

// Child stream r of a master seed. Fixed mixing function:
//   child(master, r) = mix64(master ^ mix64(r + 1))
// so merged results are independent of worker scheduling.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 1));
}

// xoshiro256++ engine seeded through SplitMix64 state expansion.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s += UINT64_C(0x9E3779B97F4A7C15);
            std::uint64_t z = s;
            z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1); safe argument for log().
    double unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() { return -std::log(unit_open()); }

    double gumbel() { return -std::log(-std::log(unit_open())); }

    std::uint64_t poisson(double mean);

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return UINT64_C(0xFFFFFFFFFFFFFFFF); }
    std::uint64_t operator()() { return next_u64(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_;
};

}  // namespace records

#endif
