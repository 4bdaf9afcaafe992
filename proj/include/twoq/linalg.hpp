#pragma once

#include <complex>
#include <vector>

#include "twoq/errors.hpp"

namespace twoq {

using complexd = std::complex<double>;

/// Dense square complex matrix, row-major. Public operations target dim 2
/// and 4; intermediates (Kronecker chains) may use larger dims up to 16.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
        if (dim < 1) throw BadDimension("matrix dimension must be >= 1");
    }

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    complexd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const complexd& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * dim_ + j];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    complexd trace() const;

    /// max_{ij} |entry|
    double max_abs() const;
    /// max_{ij} |M[i][j] - conj(M[j][i])|
    double hermiticity_error() const;
    /// max_{ij} |A[i][j] - B[i][j]|
    double max_abs_diff(const ComplexMatrix& other) const;
    /// Frobenius norm squared, sum |entry|^2 (real).
    double frobenius_sq() const;

    /// (M + M^dagger)/2, removes roundoff asymmetry
    ComplexMatrix hermitized() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(complexd s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(complexd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, complexd s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int dim_ = 0;
    std::vector<complexd> a_;
};

/// |v><v| for a column vector v.
ComplexMatrix outer(const std::vector<complexd>& v);
/// |u><w|
ComplexMatrix outer(const std::vector<complexd>& u, const std::vector<complexd>& w);
/// M v (matrix-vector product)
std::vector<complexd> matvec(const ComplexMatrix& m, const std::vector<complexd>& v);
/// <u|w>
complexd inner(const std::vector<complexd>& u, const std::vector<complexd>& w);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, unitary
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Off-diagonal
/// Frobenius norm is driven below 1e-14 (relative to the matrix scale),
/// at most 100 sweeps. Eigenvalues ascending, eigenvectors as columns.
/// Throws NonHermitianInput when max |M - M^dagger| > 1e-12.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// Kronecker product; qubit a is the left factor project-wide, basis
/// order |00>,|01>,|10>,|11>. Throws DimensionOverflow above dim 16.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Reduce a 4x4 two-qubit operator to the kept qubit's 2x2 operator.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep);

}  // namespace twoq
