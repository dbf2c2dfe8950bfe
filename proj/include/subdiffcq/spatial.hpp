#pragma once

#include "subdiffcq/linalg.hpp"
#include "subdiffcq/precision.hpp"

#include <functional>

namespace subdiffcq {

// Chebyshev-Gauss-Lobatto collocation of the Dirichlet Laplacian on (-1,1).
struct SpatialOperator {
    int M = 0;                // polynomial degree; M+1 points
    Vector points;            // x_j = cos(j*pi/M), j = 0..M
    Matrix D;                 // first-derivative collocation matrix
    Matrix A_interior;        // (M-1)x(M-1) interior block of D^2
    Vector norm_weights;      // Clenshaw-Curtis weights at interior nodes
};

SpatialOperator build_spatial(int M);

// sqrt(sum_j w_j v_j^2) over interior nodes.
Real discrete_l2_norm(const Vector& vec, const SpatialOperator& op);

// Samples a scalar profile at the interior nodes x_1..x_{M-1}.
Vector sample_interior(const SpatialOperator& op, const std::function<Real(const Real&)>& f);

} // namespace subdiffcq
