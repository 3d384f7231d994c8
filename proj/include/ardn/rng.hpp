#pragma once

#include <cmath>
#include <cstdint>

// Reproducible random streams. Everything that consumes randomness in this
// project derives an independent SplitMix64 stream from (seed, index) pairs,
// so results never depend on iteration order or worker scheduling. The exact
// bit recipes below are part of the file-format/determinism contract.

namespace ardn::rng {

inline constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline uint64_t mix_bits(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from a base seed and an index.
inline uint64_t derive(uint64_t seed, uint64_t index) {
    return mix_bits(seed + kGamma * (index + 1));
}

inline uint64_t derive(uint64_t seed, uint64_t a, uint64_t b) {
    return derive(derive(seed, a), b);
}

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += kGamma;
        return mix_bits(state_);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe to feed to log().
    double next_double_open() { return double((next() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, n). Double-based so any implementation of the
    // same recipe lands on the same values; fine for n well below 2^53.
    uint64_t next_below(uint64_t n) { return uint64_t(next_double() * double(n)); }

private:
    uint64_t state_;
};

// One standard normal draw per call via Box-Muller; the second value of each
// pair is buffered so consumption stays two uniforms per two normals.
class NormalSource {
public:
    explicit NormalSource(uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = gen_.next_double_open();
        const double u2 = gen_.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Knuth's multiplication method; fine for the lambda <= 10 this project uses.
inline uint64_t poisson_draw(SplitMix64& gen, double lambda) {
    const double limit = std::exp(-lambda);
    uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= gen.next_double();
    } while (p > limit);
    return k - 1;
}

}  // namespace ardn::rng
