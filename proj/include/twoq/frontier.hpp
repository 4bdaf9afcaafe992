#pragma once

#include <cstdint>
#include <vector>

#include "twoq/states.hpp"

namespace twoq {

/// One boundary point of the physical region in the tangle-entropy plane.
/// `entropy` is the requested target; the argmax state matches it within
/// 1e-6 whenever `converged` is set, and `max_tangle` is exactly
/// tangle(argmax_state).
struct FrontierPoint {
    double entropy = 0.0;
    double max_tangle = 0.0;
    DensityMatrix argmax_state;
    bool converged = false;
    long iterations = 0;  // objective evaluations spent
};

struct FrontierGrid {
    double s_min = 0.0;
    double s_max = 2.0;
    int points = 21;
};

/// Best-of-restarts penalized pattern search over states of fixed
/// spectrum (weights on the simplex times a parametrized eigenbasis).
/// Deterministic for fixed (target, restarts, seed).
/// Throws BadEntropy outside [0,2].
FrontierPoint max_tangle_at_entropy(double target_entropy, int restarts, std::uint64_t seed);

/// max_tangle_at_entropy over an even entropy grid; later points reuse
/// the previous argmax as one extra warm start.
std::vector<FrontierPoint> trace_frontier(const FrontierGrid& grid, int restarts,
                                          std::uint64_t seed);

}  // namespace twoq
