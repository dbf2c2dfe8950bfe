#pragma once

#include "subdiffcq/linalg.hpp"
#include "subdiffcq/source_smoothing.hpp"
#include "subdiffcq/spatial.hpp"

namespace subdiffcq {

// Integration contour: circular arc of radius kappa joined to two rays at
// angles +-theta, truncated at |z| = R.
struct ContourParams {
    Real theta;  // in (pi/2, pi)
    Real kappa;  // arc radius > 0
    Real R;      // ray truncation radius > kappa
    int n_ray = 400;
    int n_arc = 100;

    // theta = 3pi/4, kappa = 1/t, R sized so the truncated tail is below the
    // working accuracy target.
    static ContourParams defaults(const Real& t);
};

// Reference u(t) = v + V(t) for the pure-power source t^mu * q (q may be empty
// for a zero source) via the resolvent contour integral. Conjugate symmetry:
// the upper half contour is integrated and doubled.
Vector contour_solution(const Real& alpha, const Matrix& A, const Vector& v, const Real& mu,
                        const Vector& q, const Real& t, const ContourParams& params,
                        Exec exec = Exec::Parallel);

// E_{alpha,beta}(z) by direct series summation; |z| <= 50.
Real mittag_leffler(const Real& alpha, const Real& beta, const Real& z);

// Exact solution of the scalar model d_t^alpha (u - v) = -lambda u:
// u(t) = v E_alpha(-lambda t^alpha).
Real scalar_reference(const Real& alpha, const Real& lambda, const Real& v, const Real& t);

} // namespace subdiffcq
