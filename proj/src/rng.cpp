#include "twoq/rng.hpp"

#include <cmath>
#include <numbers>

#include "twoq/errors.hpp"

namespace twoq {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next_u64();
}

double sample_gaussian(SplitMix64& rng) {
    const double u1 = rng.next_double_open();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::uint64_t poisson_knuth(SplitMix64& rng, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.next_double_open();
    } while (p > limit);
    return k - 1;
}

// Hormann's PTRS transformed rejection, valid for mean >= 10.
std::uint64_t poisson_ptrs(SplitMix64& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double_open();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * loglam - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace

std::uint64_t sample_poisson(SplitMix64& rng, double mean) {
    if (mean < 0.0 || !std::isfinite(mean))
        throw ParamOutOfRange("poisson mean must be finite and non-negative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_knuth(rng, mean);
    return poisson_ptrs(rng, mean);
}

std::vector<double> sample_dirichlet(SplitMix64& rng, int k) {
    if (k < 1) throw ParamOutOfRange("dirichlet needs k >= 1");
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& x : w) {
        x = -std::log(rng.next_double_open());
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

}  // namespace twoq
