#include "twoq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twoq {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kJacobiOffTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr int kKronMaxDim = 16;

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

complexd ComplexMatrix::trace() const {
    complexd t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const complexd& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_error() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (other.dim() != dim_) throw BadDimension("dimension mismatch in max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - other.a_[k]));
    return m;
}

double ComplexMatrix::frobenius_sq() const {
    double s = 0.0;
    for (const complexd& z : a_) s += std::norm(z);
    return s;
}

ComplexMatrix ComplexMatrix::hermitized() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.dim() != dim_) throw BadDimension("dimension mismatch in +");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.dim() != dim_) throw BadDimension("dimension mismatch in -");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd s) {
    for (complexd& z : a_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw BadDimension("dimension mismatch in *");
    const int n = a.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const complexd aik = a(i, k);
            if (aik == complexd{}) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix outer(const std::vector<complexd>& v) { return outer(v, v); }

ComplexMatrix outer(const std::vector<complexd>& u, const std::vector<complexd>& w) {
    if (u.size() != w.size()) throw BadDimension("vector length mismatch in outer");
    const int n = static_cast<int>(u.size());
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = u[i] * std::conj(w[j]);
    return r;
}

std::vector<complexd> matvec(const ComplexMatrix& m, const std::vector<complexd>& v) {
    if (static_cast<int>(v.size()) != m.dim()) throw BadDimension("vector length mismatch in apply");
    std::vector<complexd> r(v.size());
    for (int i = 0; i < m.dim(); ++i) {
        complexd s = 0.0;
        for (int j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

complexd inner(const std::vector<complexd>& u, const std::vector<complexd>& w) {
    if (u.size() != w.size()) throw BadDimension("vector length mismatch in inner");
    complexd s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * w[k];
    return s;
}

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m = [] {
        ComplexMatrix p(2);
        p(0, 1) = 1.0;
        p(1, 0) = 1.0;
        return p;
    }();
    return m;
}

const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m = [] {
        ComplexMatrix p(2);
        p(0, 1) = complexd(0.0, -1.0);
        p(1, 0) = complexd(0.0, 1.0);
        return p;
    }();
    return m;
}

const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m = [] {
        ComplexMatrix p(2);
        p(0, 0) = 1.0;
        p(1, 1) = -1.0;
        return p;
    }();
    return m;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
    if (m.hermiticity_error() > kHermitianTol)
        throw NonHermitianInput("hermitian_eigen: input is not Hermitian within 1e-12");

    const int n = m.dim();
    ComplexMatrix a = m.hermitized();
    ComplexMatrix v = ComplexMatrix::identity(n);

    // Scale-aware stopping: pure zero matrices terminate immediately.
    const double scale = std::max(a.max_abs(), 1.0);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= kJacobiOffTol * scale) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const complexd apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const complexd phase = apq / g;  // e^{i phi}
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // 2x2 unitary on (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const complexd jpp = c;
                const complexd jpq = s;
                const complexd jqp = -s * std::conj(phase);
                const complexd jqq = c * std::conj(phase);

                // A <- A J (columns p,q)
                for (int k = 0; k < n; ++k) {
                    const complexd akp = a(k, p);
                    const complexd akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                // A <- J^dagger A (rows p,q)
                for (int k = 0; k < n; ++k) {
                    const complexd apk = a(p, k);
                    const complexd aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                // V <- V J
                for (int k = 0; k < n; ++k) {
                    const complexd vkp = v(k, p);
                    const complexd vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition r;
    r.eigenvalues.resize(n);
    r.eigenvectors = ComplexMatrix(n);
    for (int c = 0; c < n; ++c) {
        r.eigenvalues[c] = a(order[c], order[c]).real();
        for (int k = 0; k < n; ++k) r.eigenvectors(k, c) = v(k, order[c]);
    }
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    if (na * nb > kKronMaxDim)
        throw DimensionOverflow("kron: result dimension exceeds 16");
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const complexd aij = a(i, j);
            if (aij == complexd{}) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep) {
    if (m.dim() != 4) throw BadDimension("partial_trace expects a 4x4 matrix");
    ComplexMatrix r(2);
    if (keep == Subsystem::A) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    } else {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = m(i, j) + m(2 + i, 2 + j);
    }
    return r;
}

}  // namespace twoq
