#pragma once

#include "subdiffcq/complex.hpp"
#include "subdiffcq/precision.hpp"

#include <cstddef>
#include <vector>

namespace subdiffcq {

using Vector = std::vector<Real>;
using CVector = std::vector<Complex>;

// Dense row-major matrix of extended-precision reals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Real(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Real& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Real> a_;
};

Vector matvec(const Matrix& A, const Vector& x);
Matrix matmul(const Matrix& A, const Matrix& B);

// LU factorization with partial pivoting, factored once and reused.
class LuFactor {
public:
    explicit LuFactor(Matrix A);
    Vector solve(const Vector& b) const;

private:
    Matrix lu_;
    std::vector<std::size_t> piv_;
};

// Complex variant for resolvent solves (z^alpha - A) x = b.
class CLuFactor {
public:
    CLuFactor(const Complex& shift, const Matrix& A); // factors shift*I - A
    CVector solve(const CVector& b) const;

private:
    std::size_t n_;
    std::vector<Complex> lu_;
    std::vector<std::size_t> piv_;
};

Real max_abs(const Vector& v);
Real dot(const Vector& a, const Vector& b);

} // namespace subdiffcq
