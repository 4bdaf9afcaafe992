#include "twoq/frontier.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "twoq/measures.hpp"
#include "twoq/rng.hpp"

namespace twoq {

namespace {

constexpr int kNumWeights = 4;
constexpr int kNumAngles = 12;  // 6 plane rotations x (angle, phase)
constexpr int kNumParams = kNumWeights + kNumAngles;
constexpr double kEntropyMatchTol = 1e-6;

constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

using ParamVec = std::array<double, kNumParams>;

std::array<double, 4> weights_from_raw(const ParamVec& theta) {
    std::array<double, 4> w{};
    double sum = 0.0;
    for (int k = 0; k < kNumWeights; ++k) {
        w[k] = std::max(theta[k], 0.0);
        sum += w[k];
    }
    if (sum < 1e-12) return {0.25, 0.25, 0.25, 0.25};
    for (double& x : w) x /= sum;
    return w;
}

double simplex_entropy(const std::array<double, 4>& w) {
    double s = 0.0;
    for (double x : w)
        if (x > 1e-300) s -= x * std::log2(x);
    return s;
}

/// U_seed times a product of phased plane rotations, one per index pair.
ComplexMatrix unitary_from_params(const ComplexMatrix& u_seed, const ParamVec& theta) {
    ComplexMatrix u = u_seed;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const auto [i, j] = kPairs[k];
        const double ang = theta[kNumWeights + 2 * k];
        const double phi = theta[kNumWeights + 2 * k + 1];
        const double c = std::cos(ang);
        const double s = std::sin(ang);
        const complexd e_phi = std::polar(1.0, phi);
        for (int r = 0; r < 4; ++r) {
            const complexd ui = u(r, i);
            const complexd uj = u(r, j);
            u(r, i) = c * ui - s * std::conj(e_phi) * uj;
            u(r, j) = s * e_phi * ui + c * uj;
        }
    }
    return u;
}

std::array<double, 4> restore_entropy(std::array<double, 4> w, double target);

struct Objective {
    const ComplexMatrix& u_seed;
    double target;
    long evals = 0;

    // Unclamped Wootters difference, maximized. The raw weights are
    // projected onto the simplex and then onto the H(w) = target level
    // set before every evaluation, so the entropy constraint holds
    // exactly at each step and coordinate moves travel along the
    // constraint manifold. The spectrum is exactly the weight vector,
    // which keeps the constraint off the eigensolver.
    double operator()(const ParamVec& theta) {
        ++evals;
        const std::array<double, 4> w = restore_entropy(weights_from_raw(theta), target);
        const ComplexMatrix u = unitary_from_params(u_seed, theta);
        return detail::wootters_difference(u, {w.begin(), w.end()});
    }
};

/// Greedy coordinate pattern search; first improving move wins, step
/// halves when a full pass stalls.
void pattern_search(Objective& obj, ParamVec& theta, double& best, double step_init,
                    double step_min, bool weights_frozen, int max_passes) {
    double step = step_init;
    int pass = 0;
    while (step > step_min && pass < max_passes) {
        ++pass;
        bool improved = false;
        for (int k = weights_frozen ? kNumWeights : 0; k < kNumParams; ++k) {
            for (double sign : {1.0, -1.0}) {
                ParamVec cand = theta;
                cand[k] += sign * step;
                if (k < kNumWeights) cand[k] = std::clamp(cand[k], 0.0, 8.0);
                const double f = obj(cand);
                if (f > best + 1e-15) {
                    theta = cand;
                    best = f;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

/// Move the weights onto the H(w) = target level set. Toward the uniform
/// point when entropy is short, toward the dominant corner when it is in
/// excess; both directions are monotone crossings for the concave H.
std::array<double, 4> restore_entropy(std::array<double, 4> w, double target) {
    double h = simplex_entropy(w);
    if (std::abs(h - target) < 1e-13) return w;

    std::array<double, 4> goal{};
    if (h < target) {
        goal = {0.25, 0.25, 0.25, 0.25};
    } else {
        const int imax =
            static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
        goal[imax] = 1.0;
    }
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        std::array<double, 4> cand;
        for (int k = 0; k < 4; ++k) cand[k] = (1.0 - mid) * w[k] + mid * goal[k];
        const double hm = simplex_entropy(cand);
        const bool target_beyond = (h < target) ? (hm < target) : (hm > target);
        if (target_beyond)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18) break;
    }
    const double t = 0.5 * (lo + hi);
    std::array<double, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = (1.0 - t) * w[k] + t * goal[k];
    return out;
}

struct RestartResult {
    double surrogate = -10.0;
    ComplexMatrix basis{4};
    std::array<double, 4> weights{};
    long evals = 0;
};

RestartResult optimize_once(double target, const ComplexMatrix& u_seed,
                            const std::array<double, 4>& w_init,
                            const ParamVec& angles_init) {
    ParamVec theta{};
    for (int k = 0; k < kNumWeights; ++k) theta[k] = w_init[k];
    for (int k = kNumWeights; k < kNumParams; ++k) theta[k] = angles_init[k];

    // Joint projected search, then a basis-only polish at frozen weights.
    Objective obj{u_seed, target};
    double best = obj(theta);
    pattern_search(obj, theta, best, 0.4, 1e-6, false, 500);
    {
        const std::array<double, 4> w = restore_entropy(weights_from_raw(theta), target);
        for (int k = 0; k < kNumWeights; ++k) theta[k] = w[k];
    }
    pattern_search(obj, theta, best, 1e-2, 1e-8, true, 400);

    RestartResult r;
    r.weights = restore_entropy(weights_from_raw(theta), target);
    r.basis = unitary_from_params(u_seed, theta);
    r.surrogate = detail::wootters_difference(r.basis, {r.weights.begin(), r.weights.end()});
    r.evals = obj.evals;
    return r;
}

ComplexMatrix bell_x_seed() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u(4);
    // columns: |phi+>, |01>, |phi->, |10>
    u(0, 0) = r;
    u(3, 0) = r;
    u(1, 1) = 1.0;
    u(0, 2) = r;
    u(3, 2) = -r;
    u(2, 3) = 1.0;
    return u;
}

ComplexMatrix bell_diag_seed() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u(4);
    // columns: |phi+>, |psi+>, |psi->, |phi->
    u(0, 0) = r;
    u(3, 0) = r;
    u(1, 1) = r;
    u(2, 1) = r;
    u(1, 2) = r;
    u(2, 2) = -r;
    u(0, 3) = r;
    u(3, 3) = -r;
    return u;
}

DensityMatrix state_from(const ComplexMatrix& basis, const std::array<double, 4>& w) {
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < 4; ++k) s += basis(i, k) * w[k] * std::conj(basis(j, k));
            m(i, j) = s;
        }
    return DensityMatrix(m.hermitized());
}

struct WarmStart {
    ComplexMatrix basis{4};
    std::array<double, 4> weights{};
    bool available = false;
};

FrontierPoint solve_point(double target, int restarts, std::uint64_t seed,
                          const WarmStart& warm) {
    if (target < 0.0 || target > 2.0)
        throw BadEntropy("target entropy must lie in [0,2]");
    if (restarts < 1) throw ParamOutOfRange("restarts must be >= 1");

    RestartResult best;
    long evals = 0;

    auto consider = [&](const RestartResult& r) {
        evals += r.evals;
        if (r.surrogate > best.surrogate) best = r;
    };

    const std::array<double, 4> fixed_w = {0.6, 0.25, 0.1, 0.05};
    for (int r = 0; r < restarts; ++r) {
        ComplexMatrix u_seed = ComplexMatrix::identity(4);
        std::array<double, 4> w_init = fixed_w;
        ParamVec angles{};
        if (r == 0) {
            u_seed = bell_x_seed();
        } else if (r == 1) {
            u_seed = bell_diag_seed();
        } else {
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            const std::vector<double> dw = sample_dirichlet(rng, 4);
            std::copy(dw.begin(), dw.end(), w_init.begin());
            for (int k = kNumWeights; k < kNumParams; ++k)
                angles[k] = 2.0 * 3.14159265358979323846 * rng.next_double();
        }
        consider(optimize_once(target, u_seed, restore_entropy(w_init, target), angles));
    }
    if (warm.available)
        consider(optimize_once(target, warm.basis, restore_entropy(warm.weights, target),
                               ParamVec{}));

    FrontierPoint p;
    p.entropy = target;
    p.argmax_state = state_from(best.basis, best.weights);
    p.max_tangle = tangle(p.argmax_state);
    p.iterations = evals;
    p.converged = std::abs(von_neumann_entropy(p.argmax_state) - target) <= kEntropyMatchTol;
    return p;
}

}  // namespace

FrontierPoint max_tangle_at_entropy(double target_entropy, int restarts, std::uint64_t seed) {
    return solve_point(target_entropy, restarts, seed, WarmStart{});
}

std::vector<FrontierPoint> trace_frontier(const FrontierGrid& grid, int restarts,
                                          std::uint64_t seed) {
    if (grid.points < 2) throw ParamOutOfRange("frontier grid needs at least 2 points");
    if (grid.s_min < 0.0 || grid.s_max > 2.0 || grid.s_min >= grid.s_max)
        throw BadEntropy("frontier grid must lie in [0,2] with s_min < s_max");

    std::vector<FrontierPoint> out;
    out.reserve(grid.points);
    WarmStart warm;
    for (int i = 0; i < grid.points; ++i) {
        const double s =
            grid.s_min + (grid.s_max - grid.s_min) * i / (grid.points - 1);
        FrontierPoint p = solve_point(s, restarts, derive_seed(seed, 1000 + i), warm);
        const EigenDecomposition ed = hermitian_eigen(p.argmax_state.mat);
        warm.basis = ed.eigenvectors;
        for (int k = 0; k < 4; ++k) warm.weights[k] = std::max(ed.eigenvalues[k], 0.0);
        warm.available = true;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace twoq
