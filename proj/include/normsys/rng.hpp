#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace normsys {

// Seeded random source.  Wraps mt19937_64 (whose raw output sequence is
// specified by the standard, hence reproducible across platforms) and derives
// all values from raw draws only, never from std:: distributions, whose
// output is implementation-defined.  Every randomized routine takes one of
// these and records its seed, so reports are replayable byte for byte.
class Rng {
public:
    static constexpr const char* name = "mt19937-64";

    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::complex<double> complex_in_disc() {
        // rejection from the square; keeps the draw count data-independent of
        // platform rounding since the comparison is on exact doubles
        for (;;) {
            double re = uniform(-1.0, 1.0);
            double im = uniform(-1.0, 1.0);
            if (re * re + im * im <= 1.0) return {re, im};
        }
    }

    // Child generator with a decorrelated seed; used to give each trial of a
    // search its own replayable stream.
    Rng fork(std::uint64_t stream) {
        std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        s ^= eng_();
        return Rng(s);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace normsys
