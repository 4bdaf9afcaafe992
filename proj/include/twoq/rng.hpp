#pragma once

#include <cstdint>
#include <vector>

namespace twoq {

/// SplitMix64 generator (Steele, Lea & Flood). Chosen over std engines so
/// that every sampled value is reproducible bit-for-bit across platforms
/// and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0,1), 53-bit mantissa
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in (0,1], safe as a log argument
    double next_double_open() { return 1.0 - next_double(); }

private:
    std::uint64_t state_;
};

/// Stream derivation for independent substreams (Monte Carlo resamples,
/// optimizer restarts): hashes (seed, index) into a fresh seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Standard normal via Box-Muller on SplitMix64 uniforms.
double sample_gaussian(SplitMix64& rng);

/// Poisson(mean). Knuth multiplication below mean 30, Hormann's PTRS
/// transformed rejection above; both consume only SplitMix64 uniforms.
std::uint64_t sample_poisson(SplitMix64& rng, double mean);

/// Flat Dirichlet weights (uniform on the simplex), k >= 1.
std::vector<double> sample_dirichlet(SplitMix64& rng, int k);

}  // namespace twoq
