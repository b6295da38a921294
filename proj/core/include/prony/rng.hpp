#pragma once

#include <complex>
#include <cstdint>

namespace prony {

// Splitmix64-based generator. All randomness in the library flows through
// explicit seeds of this type; there is no ambient RNG state, and the output
// stream is identical across platforms and thread counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    double log_uniform(double lo, double hi);

    // [0, 2*pi)
    double angle();

    int uniform_int(int lo, int hi); // inclusive range

    // Area-uniform draw from the closed unit disk.
    std::complex<double> unit_disk();

    // Derive an independent stream from two values (seed, stream id).
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
    std::uint64_t state_;
};

} // namespace prony
