#include "twoq/measures.hpp"

#include <algorithm>
#include <cmath>

namespace twoq {

namespace {

constexpr double kEigenFloor = -1e-9;
constexpr double kEigenZero = 1e-12;

void check_valid(const DensityMatrix& rho, const EigenDecomposition& ed) {
    if (std::abs(rho.mat.trace() - complexd(1.0, 0.0)) > 1e-10)
        throw InvalidState("density matrix trace deviates from 1 by more than 1e-10");
    if (ed.eigenvalues.front() < kEigenFloor)
        throw InvalidState("density matrix has an eigenvalue below -1e-9");
}

EigenDecomposition checked_eigen(const DensityMatrix& rho) {
    if (rho.mat.hermiticity_error() > 1e-12)
        throw InvalidState("density matrix is not Hermitian within 1e-12");
    EigenDecomposition ed = hermitian_eigen(rho.mat);
    check_valid(rho, ed);
    return ed;
}

const ComplexMatrix& spin_flip_yy() {
    static const ComplexMatrix m = kron(pauli_y(), pauli_y());
    return m;
}

}  // namespace

namespace detail {

double entropy_from_eigenvalues(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < kEigenFloor)
            throw InvalidState("eigenvalue below the -1e-9 validity floor");
        if (lambda < kEigenZero) continue;  // 0 log 0 := 0
        s -= lambda * std::log2(lambda);
    }
    return s;
}

double wootters_difference(const ComplexMatrix& basis, const std::vector<double>& weights) {
    // rho = B W B^dagger with orthonormal columns B and weights W. The
    // spectrum of rho * rho_tilde equals that of the Hermitian matrix
    // M^dagger rho_tilde M with M = B sqrt(W), which keeps the whole
    // computation inside the Hermitian eigensolver.
    const int n = basis.dim();
    if (n != 4) throw BadDimension("wootters_difference expects a two-qubit eigensystem");
    ComplexMatrix m(n);
    for (int j = 0; j < n; ++j) {
        const double r = std::sqrt(std::max(weights[j], 0.0));
        for (int i = 0; i < n; ++i) m(i, j) = basis(i, j) * r;
    }
    ComplexMatrix rho(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            complexd s = 0.0;
            for (int k = 0; k < n; ++k) s += m(i, k) * std::conj(m(j, k));
            rho(i, j) = s;
        }
    const ComplexMatrix& yy = spin_flip_yy();
    const ComplexMatrix rho_tilde = yy * rho.conjugate() * yy;
    const ComplexMatrix h = (m.adjoint() * rho_tilde * m).hermitized();
    const EigenDecomposition ed = hermitian_eigen(h);

    double lambda[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k)
        lambda[k] = std::sqrt(std::max(ed.eigenvalues[3 - k], 0.0));  // descending
    return lambda[0] - lambda[1] - lambda[2] - lambda[3];
}

}  // namespace detail

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenDecomposition ed = checked_eigen(rho);
    return detail::entropy_from_eigenvalues(ed.eigenvalues);
}

double von_neumann_information(const DensityMatrix& rho) {
    return std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

double purity(const DensityMatrix& rho) {
    const EigenDecomposition ed = checked_eigen(rho);
    (void)ed;  // validity gate only
    return rho.mat.frobenius_sq();  // Tr rho^2 for Hermitian rho
}

double linear_information(const DensityMatrix& rho) {
    if (rho.dim() == 2) return bloch(rho).length_sq();
    const EigenDecomposition ed = checked_eigen(rho);
    double p2 = 0.0;
    for (double lambda : ed.eigenvalues) p2 += lambda * lambda;
    return (2.0 / 3.0) * (4.0 * p2 - 1.0);
}

InfoBudget info_budget_vn(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw BadDimension("info budget expects a two-qubit state");
    const double s_ab = von_neumann_entropy(rho);
    const double s_a =
        von_neumann_entropy(DensityMatrix(partial_trace(rho.mat, Subsystem::A)));
    const double s_b =
        von_neumann_entropy(DensityMatrix(partial_trace(rho.mat, Subsystem::B)));
    InfoBudget b;
    b.measure = InfoMeasure::VonNeumann;
    b.i_a = 1.0 - s_a;
    b.i_b = 1.0 - s_b;
    b.i_local = b.i_a + b.i_b;
    b.i_total = 2.0 - s_ab;
    b.i_corr = b.i_total - b.i_local;
    return b;
}

InfoBudget info_budget_linear(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw BadDimension("info budget expects a two-qubit state");
    InfoBudget b;
    b.measure = InfoMeasure::Linear;
    b.i_a = linear_information(DensityMatrix(partial_trace(rho.mat, Subsystem::A)));
    b.i_b = linear_information(DensityMatrix(partial_trace(rho.mat, Subsystem::B)));
    b.i_local = b.i_a + b.i_b;
    b.i_total = linear_information(rho);
    b.i_corr = b.i_total - b.i_local;
    return b;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw BadDimension("concurrence expects a two-qubit state");
    const EigenDecomposition ed = checked_eigen(rho);
    return std::max(0.0, detail::wootters_difference(ed.eigenvectors, ed.eigenvalues));
}

double tangle(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return c * c;
}

BlochVector bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw BadDimension("bloch expects a qubit state");
    const EigenDecomposition ed = checked_eigen(rho);
    (void)ed;  // validity gate only
    BlochVector v;
    v.x = 2.0 * rho.mat(0, 1).real();
    v.y = -2.0 * rho.mat(0, 1).imag();
    v.z = (rho.mat(0, 0) - rho.mat(1, 1)).real();
    return v;
}

VisibilityPredictability visibility_predictability(const DensityMatrix& rho) {
    const BlochVector v = bloch(rho);
    return {std::sqrt(v.x * v.x + v.y * v.y), std::abs(v.z)};
}

DualityLedger triality_ledger(const DensityMatrix& rho, Subsystem which) {
    if (rho.dim() != 4) throw BadDimension("triality ledger expects a two-qubit state");
    const DensityMatrix marginal(partial_trace(rho.mat, which));
    const VisibilityPredictability vp = visibility_predictability(marginal);
    DualityLedger l;
    l.visibility = vp.visibility;
    l.predictability = vp.predictability;
    l.concurrence = concurrence(rho);
    l.lhs_duality = vp.visibility * vp.visibility + vp.predictability * vp.predictability;
    l.lhs_triality = l.lhs_duality + l.concurrence * l.concurrence;
    return l;
}

}  // namespace twoq
