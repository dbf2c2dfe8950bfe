#pragma once

#include "subdiffcq/cq_weights.hpp"
#include "subdiffcq/linalg.hpp"
#include "subdiffcq/source_smoothing.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace subdiffcq {

struct SchemeConfig {
    Real alpha;            // fractional order, in (0,1)
    int k = 1;             // BDF order, 1..6
    int m = 0;             // smoothing order, 0 = unsmoothed baseline
    int N = 0;             // time steps
    Real T{1};             // final time
    unsigned prec_bits = 256;
    int M = 32;            // spatial degree (harness-level, unused by the stepper)

    void validate() const;
};

struct Trajectory {
    SchemeConfig config;
    std::vector<Vector> V; // V^n = u^n - v, n = 0..N; V^0 = 0 exactly
    std::vector<Vector> u; // u^n = v + V^n

    const Vector& final_u() const { return u.back(); }
};

// Marches the ID m-BDF k scheme
//   d^alpha_{tau,k} V^n - A V^n = d^m_{tau,k} ( t_n^m/m! A v + G^n q ),
// with the m = 0 baseline  d^alpha_{tau,k} V^n - A V^n = A v + g(t_n) q.
// The system matrix (w0 tau^-alpha I - A) is LU-factored once and reused.
class IdmBdfkStepper {
public:
    IdmBdfkStepper(SchemeConfig config, Matrix A, Exec exec = Exec::Parallel);

    // m >= 1 smoothing march; G is the smoothed scalar table (size N+1, G^0 = 0)
    // and q the spatial profile vector (empty for a zero source).
    Trajectory march(const Vector& v, const Vector& q, const std::vector<Real>& G) const;

    // m = 0 baseline; g holds pointwise samples g_t(t_n) for n = 1..N (index n).
    Trajectory march_baseline(const Vector& v, const Vector& q,
                              const std::vector<Real>& g) const;

    // Max-abs residual of the step-n linear system recomputed from history.
    Real residual(const Trajectory& traj, const Vector& v, const Vector& q,
                  const std::vector<Real>& G_or_g, int n) const;

    const WeightTable& alpha_weights() const { return walpha_; }
    const WeightTable& int_weights() const { return wm_; }

private:
    Vector rhs_at(const std::vector<Vector>& V, const Vector& Av, const Vector& q,
                  const std::vector<Real>& G_or_g, int n) const;

    SchemeConfig cfg_;
    Matrix A_;
    Exec exec_;
    Real tau_;
    WeightTable walpha_;      // fractional weights, length N+1
    WeightTable wm_;          // integer-power weights (m >= 1), support k*m
    std::unique_ptr<LuFactor> lu_;
};

} // namespace subdiffcq
