#include "subdiffcq/spatial.hpp"

#include <boost/math/constants/constants.hpp>

#include <stdexcept>

namespace subdiffcq {

namespace {

// Clenshaw-Curtis weights on the M+1 Chebyshev-Gauss-Lobatto points.
Vector clenshaw_curtis(int M) {
    const Real pi = boost::math::constants::pi<Real>();
    Vector w(M + 1, Real(0));
    if (M % 2 == 0) {
        w[0] = w[M] = Real(1) / (Real(M) * M - 1);
        for (int j = 1; j < M; ++j) {
            Real v(1);
            Real theta = pi * j / M;
            for (int k = 1; k < M / 2; ++k) v -= 2 * cos(2 * k * theta) / (4 * k * k - 1);
            v -= cos(M * theta) / (Real(M) * M - 1);
            w[j] = 2 * v / M;
        }
    } else {
        w[0] = w[M] = Real(1) / (Real(M) * M);
        for (int j = 1; j < M; ++j) {
            Real v(1);
            Real theta = pi * j / M;
            for (int k = 1; k <= (M - 1) / 2; ++k) v -= 2 * cos(2 * k * theta) / (4 * k * k - 1);
            w[j] = 2 * v / M;
        }
    }
    return w;
}

} // namespace

SpatialOperator build_spatial(int M) {
    if (M < 4) throw std::invalid_argument("build_spatial: M must be >= 4");
    const Real pi = boost::math::constants::pi<Real>();

    SpatialOperator op;
    op.M = M;
    op.points.resize(M + 1);
    for (int j = 0; j <= M; ++j) op.points[j] = cos(pi * j / M);

    // Standard CGL differentiation matrix with the negative-sum-trick diagonal.
    op.D = Matrix(M + 1, M + 1);
    auto c = [&](int j) { return (j == 0 || j == M) ? Real(2) : Real(1); };
    for (int i = 0; i <= M; ++i) {
        Real row_sum(0);
        for (int j = 0; j <= M; ++j) {
            if (i == j) continue;
            Real sign = ((i + j) % 2 == 0) ? Real(1) : Real(-1);
            op.D(i, j) = c(i) / c(j) * sign / (op.points[i] - op.points[j]);
            row_sum += op.D(i, j);
        }
        op.D(i, i) = -row_sum;
    }

    Matrix D2 = matmul(op.D, op.D);
    op.A_interior = Matrix(M - 1, M - 1);
    for (int i = 1; i < M; ++i)
        for (int j = 1; j < M; ++j) op.A_interior(i - 1, j - 1) = D2(i, j);

    Vector w = clenshaw_curtis(M);
    op.norm_weights.assign(w.begin() + 1, w.end() - 1);
    return op;
}

Real discrete_l2_norm(const Vector& vec, const SpatialOperator& op) {
    if (vec.size() != op.norm_weights.size())
        throw std::invalid_argument("discrete_l2_norm: length must match M-1");
    Real s(0), t;
    for (std::size_t j = 0; j < vec.size(); ++j) {
        t = vec[j];
        t *= vec[j];
        t *= op.norm_weights[j];
        s += t;
    }
    return sqrt(s);
}

Vector sample_interior(const SpatialOperator& op, const std::function<Real(const Real&)>& f) {
    Vector v;
    v.reserve(op.M - 1);
    for (int j = 1; j < op.M; ++j) v.push_back(f(op.points[j]));
    return v;
}

} // namespace subdiffcq
