#pragma once

#include "subdiffcq/precision.hpp"

#include <cstdint>
#include <vector>

namespace subdiffcq {

// Coefficients of a polynomial in the generating variable, index j = coeff of xi^j.
struct PolyCoeffs {
    std::vector<Real> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Convolution-quadrature weights: the first N+1 series coefficients of
// (tau * delta_{tau,k}(xi))^order. The scheme divides by tau^order when
// applying them, so the table itself is tau-free.
struct WeightTable {
    Real order;
    int k = 0;
    std::vector<Real> weights;
};

// Row of the integer coefficients a_{l,j} in the rational closed form of
// gamma_l(xi) = sum_{n>=1} n^l xi^n = (sum_j a_{l,j} xi^j) / (1-xi)^{l+1}.
struct EulerianRow {
    int l = 0;
    std::vector<std::int64_t> a; // a_{l,1} .. a_{l,l}
};

// Coefficients of tau * delta_{tau,k}(xi) = sum_{j=1}^{k} (1-xi)^j / j.
PolyCoeffs bdf_poly(int k);

// First N+1 coefficients of poly(xi)^p via the power-series (Miller) recurrence.
WeightTable frac_power_weights(const PolyCoeffs& poly, const Real& p, int N);

// Same coefficients recovered by sampling poly(xi)^p on a circle and applying
// the discrete Fourier inversion; cross-check oracle for the recurrence.
WeightTable frac_power_weights_fft(const PolyCoeffs& poly, const Real& p, int N);

// Coefficients of poly(xi)^m by repeated polynomial multiplication; the
// support is finite (degree k*m), zero-padded/truncated to length N+1.
WeightTable int_power_weights(const PolyCoeffs& poly, int m, int N);

EulerianRow eulerian_coeffs(int l);

// gamma_l(x) evaluated through the Eulerian rational form, |x| < 1.
Real eulerian_gamma(const EulerianRow& row, const Real& x);

// Raised when a spectral/quadrature/sampling step cannot reach its tolerance.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace subdiffcq
