#pragma once

#include "subdiffcq/cq_weights.hpp" // AccuracyError
#include "subdiffcq/linalg.hpp"
#include "subdiffcq/precision.hpp"

#include <functional>
#include <string>
#include <vector>

namespace subdiffcq {

enum class Exec { Serial, Parallel };

using ScalarFn = std::function<Real(const Real&)>;

// One additive piece of the time kernel: coefficient * t^exponent, optionally
// multiplied/convolved with a smooth factor f(t) depending on the source mode.
struct TimeKernelTerm {
    Real coefficient{1};
    Real exponent{0}; // mu, must be > -1
    ScalarFn smooth_factor; // empty = pure power term
};

enum class KernelMode { None, PurePower, Product, Convolution };

// Separable source g(x,t) = g_t(t) * g_x(x); the time part is a finite sum of
// (power x smooth) terms combined per `mode`.
struct SourceSpec {
    KernelMode mode = KernelMode::None;
    std::vector<TimeKernelTerm> time_terms;
    ScalarFn spatial_profile;
    std::string description;
};

// Smoothed scalar time profile G^n = (J^m g_t)(t_n), n = 0..N; G^0 is exact 0.
struct SmoothedTable {
    int m = 0;
    std::vector<Real> values;
    int quadrature_order = 0;
};

// n-point Gauss-Jacobi rule for integrals of (1+s)^beta * P(s) on [-1,1],
// built by the Golub-Welsch eigen-procedure at working precision.
struct QuadRule {
    Vector nodes;
    Vector weights;
};
QuadRule jacobi_rule(const Real& beta, int n);

// Closed form J^m t^mu = Gamma(mu+1) t^(mu+m) / Gamma(mu+m+1).
Real smooth_pure_power(const Real& mu, int m, const Real& t);

// (J^m [s^mu f(s)])(t): singularity absorbed into the Jacobi weight at s=0,
// the (t-s)^(m-1) factor is polynomial and exact for the rule.
Real smooth_product(const TimeKernelTerm& term, int m, const Real& t, int quad_n);

// (J^m [t^mu * f])(t) = Gamma(mu+1)/Gamma(mu+m+1) * int_0^t (t-s)^(mu+m) f(s) ds,
// Jacobi weight placed at the s=t endpoint.
Real smooth_convolution(const TimeKernelTerm& term, int m, const Real& t, int quad_n);

// Pointwise evaluation g_t(t) for the unsmoothed baseline scheme (t > 0).
Real eval_time_kernel(const SourceSpec& spec, const Real& t, int quad_n);

SmoothedTable build_smoothed_table(const SourceSpec& spec, int m, int N, const Real& T,
                                   int quad_n, Exec exec = Exec::Parallel);

} // namespace subdiffcq
