#pragma once

#include <vector>

#include "twoq/states.hpp"

namespace twoq {

enum class InfoMeasure { VonNeumann, Linear };

/// The (i_a, i_b, i_local, i_corr, i_total) ledger of one state, in bits.
/// i_local = i_a + i_b and i_corr = i_total - i_local hold by construction;
/// under the von Neumann measure i_corr is the quantum mutual information.
struct InfoBudget {
    double i_a = 0.0;
    double i_b = 0.0;
    double i_local = 0.0;
    double i_corr = 0.0;
    double i_total = 0.0;
    InfoMeasure measure = InfoMeasure::VonNeumann;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double length_sq() const { return x * x + y * y + z * z; }
};

/// Visibility/predictability of one marginal plus the shared concurrence,
/// with the left-hand sides of the local and local+correlation trade-offs.
struct DualityLedger {
    double visibility = 0.0;
    double predictability = 0.0;
    double concurrence = 0.0;
    double lhs_duality = 0.0;   // V^2 + P^2
    double lhs_triality = 0.0;  // V^2 + P^2 + C^2
};

/// S(rho) = -Tr(rho log2 rho), in bits. Eigenvalues in [-1e-9, 0] are
/// clamped to zero (reconstruction noise floor); below -1e-9 the state is
/// rejected as invalid. Eigenvalues below 1e-12 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);

/// I(rho) = log2(dim) - S(rho), in bits.
double von_neumann_information(const DensityMatrix& rho);

/// Tr rho^2.
double purity(const DensityMatrix& rho);

/// Linear-entropy information: the squared Bloch length for a qubit;
/// (2/3)(4 Tr rho^2 - 1) for two qubits, i.e. 2 bits for pure states and
/// 0 for I4/4.
double linear_information(const DensityMatrix& rho);

/// Von Neumann ledger: i_a = 1 - S(rho_a), i_b = 1 - S(rho_b),
/// i_total = 2 - S(rho_ab), i_corr = i_total - i_local (the mutual
/// information, non-negative for physical states).
InfoBudget info_budget_vn(const DensityMatrix& rho);

/// Linear-entropy ledger: marginal terms are squared Bloch lengths,
/// i_total from linear_information. i_corr may be negative.
InfoBudget info_budget_linear(const DensityMatrix& rho);

/// Wootters concurrence: max(0, l1-l2-l3-l4) with l_i the descending
/// square roots of the spectrum of rho * rho_tilde,
/// rho_tilde = (sy x sy) conj(rho) (sy x sy).
double concurrence(const DensityMatrix& rho);

/// Concurrence squared.
double tangle(const DensityMatrix& rho);

/// Pauli expectation values of a qubit state.
BlochVector bloch(const DensityMatrix& rho);

/// Mode basis is the z axis: P = |<sz>|, V = sqrt(<sx>^2 + <sy>^2).
struct VisibilityPredictability {
    double visibility = 0.0;
    double predictability = 0.0;
};
VisibilityPredictability visibility_predictability(const DensityMatrix& rho);

/// V,P of the chosen marginal combined with the joint concurrence.
DualityLedger triality_ledger(const DensityMatrix& rho, Subsystem which);

namespace detail {

/// Entropy in bits of a spectrum, with the clamping rules above.
double entropy_from_eigenvalues(const std::vector<double>& eigenvalues);

/// Unclamped Wootters difference l1-l2-l3-l4 for a state given as an
/// eigensystem rho = basis diag(weights) basis^dagger. Negative values
/// mean "separable with slack"; concurrence is max(0, .)
double wootters_difference(const ComplexMatrix& basis, const std::vector<double>& weights);

}  // namespace detail

}  // namespace twoq
