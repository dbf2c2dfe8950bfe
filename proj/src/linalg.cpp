#include "subdiffcq/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace subdiffcq {

Vector matvec(const Matrix& A, const Vector& x) {
    if (x.size() != A.cols()) throw std::invalid_argument("matvec: shape mismatch");
    Vector y(A.rows(), Real(0));
    Real t;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Real& yi = y[i];
        for (std::size_t j = 0; j < A.cols(); ++j) {
            t = A(i, j);
            t *= x[j];
            yi += t;
        }
    }
    return y;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix C(A.rows(), B.cols());
    Real t;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const Real& aik = A(i, k);
            for (std::size_t j = 0; j < B.cols(); ++j) {
                t = aik;
                t *= B(k, j);
                C(i, j) += t;
            }
        }
    return C;
}

LuFactor::LuFactor(Matrix A) : lu_(std::move(A)) {
    const std::size_t n = lu_.rows();
    if (n != lu_.cols()) throw std::invalid_argument("LU: matrix must be square");
    piv_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs(lu_(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0) throw std::runtime_error("LU: singular matrix");
        piv_[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        for (std::size_t i = k + 1; i < n; ++i) {
            lu_(i, k) /= lu_(k, k);
            const Real& lik = lu_(i, k);
            Real t;
            for (std::size_t j = k + 1; j < n; ++j) {
                t = lik;
                t *= lu_(k, j);
                lu_(i, j) -= t;
            }
        }
    }
}

Vector LuFactor::solve(const Vector& b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw std::invalid_argument("LU solve: shape mismatch");
    Vector x = b;
    // Apply all row interchanges first; the stored L already carries them.
    for (std::size_t k = 0; k < n; ++k)
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= lu_(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
        x[i] /= lu_(i, i);
    }
    return x;
}

CLuFactor::CLuFactor(const Complex& shift, const Matrix& A) : n_(A.rows()) {
    if (A.rows() != A.cols()) throw std::invalid_argument("LU: matrix must be square");
    lu_.assign(n_ * n_, Complex{});
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            lu_[i * n_ + j] = (i == j) ? Complex(shift.re - A(i, j), shift.im)
                                       : Complex(-A(i, j), Real(0));
    piv_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t p = k;
        Real best = abs2(lu_[k * n_ + k]);
        for (std::size_t i = k + 1; i < n_; ++i) {
            Real v = abs2(lu_[i * n_ + k]);
            if (v > best) { best = v; p = i; }
        }
        if (best == 0) throw std::runtime_error("LU: singular matrix");
        piv_[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n_; ++j) std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
        for (std::size_t i = k + 1; i < n_; ++i) {
            lu_[i * n_ + k] = lu_[i * n_ + k] / lu_[k * n_ + k];
            const Complex& lik = lu_[i * n_ + k];
            for (std::size_t j = k + 1; j < n_; ++j)
                lu_[i * n_ + j] -= lik * lu_[k * n_ + j];
        }
    }
}

CVector CLuFactor::solve(const CVector& b) const {
    if (b.size() != n_) throw std::invalid_argument("LU solve: shape mismatch");
    CVector x = b;
    for (std::size_t k = 0; k < n_; ++k)
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = k + 1; i < n_; ++i) x[i] -= lu_[i * n_ + k] * x[k];
    for (std::size_t i = n_; i-- > 0;) {
        for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_[i * n_ + j] * x[j];
        x[i] = x[i] / lu_[i * n_ + i];
    }
    return x;
}

Real max_abs(const Vector& v) {
    Real m(0);
    for (const auto& x : v) {
        Real a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

Real dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: shape mismatch");
    Real s(0), t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        t = a[i];
        t *= b[i];
        s += t;
    }
    return s;
}

} // namespace subdiffcq
