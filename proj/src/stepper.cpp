#include "subdiffcq/stepper.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subdiffcq {

void SchemeConfig::validate() const {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("SchemeConfig: alpha must be in (0,1)");
    if (k < 1 || k > 6) throw std::invalid_argument("SchemeConfig: k must be in 1..6");
    if (m < 0 || m > k) throw std::invalid_argument("SchemeConfig: m must be in 0..k");
    if (N < k) throw std::invalid_argument("SchemeConfig: N must be >= k");
    if (!(T > 0)) throw std::invalid_argument("SchemeConfig: T must be > 0");
}

IdmBdfkStepper::IdmBdfkStepper(SchemeConfig config, Matrix A, Exec exec)
    : cfg_(std::move(config)), A_(std::move(A)), exec_(exec) {
    cfg_.validate();
    if (A_.rows() != A_.cols()) throw std::invalid_argument("stepper: A must be square");
    cfg_.alpha = prec::at_working(cfg_.alpha);
    cfg_.T = prec::at_working(cfg_.T);
    tau_ = cfg_.T / cfg_.N;

    PolyCoeffs poly = bdf_poly(cfg_.k);
    walpha_ = frac_power_weights(poly, cfg_.alpha, cfg_.N);
    if (cfg_.m >= 1) wm_ = int_power_weights(poly, cfg_.m, cfg_.k * cfg_.m);

    // System matrix w0 tau^-alpha I - A, step-independent.
    const Real shift = walpha_.weights[0] * pow(tau_, -cfg_.alpha);
    Matrix S(A_.rows(), A_.cols());
    for (std::size_t i = 0; i < A_.rows(); ++i)
        for (std::size_t j = 0; j < A_.cols(); ++j)
            S(i, j) = (i == j) ? Real(shift - A_(i, j)) : Real(-A_(i, j));
    lu_ = std::make_unique<LuFactor>(std::move(S));
}

Vector IdmBdfkStepper::rhs_at(const std::vector<Vector>& V, const Vector& Av, const Vector& q,
                              const std::vector<Real>& G_or_g, int n) const {
    const std::size_t dim = A_.rows();
    const Real tau_malpha = pow(tau_, -cfg_.alpha);
    Vector rhs(dim, Real(0));

    // Per-step scalar convolutions d^m(t^m/m!) and d^m(G) are shared by all
    // spatial components; fold them once before the parallel loop.
    Real conv_t(0), conv_g(0);
    if (cfg_.m >= 1) {
        const Real tau_mm = pow(tau_, -cfg_.m);
        const Real mfact = tgamma(Real(cfg_.m + 1));
        const int jmax = std::min(n, cfg_.k * cfg_.m);
        Real t;
        for (int j = 0; j <= jmax; ++j) {
            t = pow(tau_ * (n - j), cfg_.m) / mfact;
            t *= wm_.weights[j];
            conv_t += t;
            if (!q.empty()) {
                t = G_or_g[n - j];
                t *= wm_.weights[j];
                conv_g += t;
            }
        }
        conv_t *= tau_mm;
        conv_g *= tau_mm;
    }

    auto body = [&](std::size_t i) {
        Real acc(0), t;
        for (int j = 1; j <= n; ++j) {
            t = walpha_.weights[j];
            t *= V[n - j][i];
            acc += t;
        }
        acc *= -tau_malpha;

        if (cfg_.m >= 1) {
            t = conv_t;
            t *= Av[i];
            acc += t;
            if (!q.empty()) {
                t = conv_g;
                t *= q[i];
                acc += t;
            }
        } else {
            acc += Av[i];
            if (!q.empty()) acc += G_or_g[n] * q[i];
        }
        rhs[i] = std::move(acc);
    };

    if (exec_ == Exec::Parallel) {
#pragma omp parallel
        {
            prec::apply_thread_precision();
#pragma omp for schedule(static)
            for (std::size_t i = 0; i < dim; ++i) body(i);
        }
    } else {
        for (std::size_t i = 0; i < dim; ++i) body(i);
    }
    return rhs;
}

Trajectory IdmBdfkStepper::march(const Vector& v, const Vector& q,
                                 const std::vector<Real>& G) const {
    if (cfg_.m < 1) throw std::invalid_argument("march: m must be >= 1 (use march_baseline)");
    const std::size_t dim = A_.rows();
    if (v.size() != dim) throw std::invalid_argument("march: v has wrong length");
    if (!q.empty() && (q.size() != dim || G.size() != static_cast<std::size_t>(cfg_.N) + 1))
        throw std::invalid_argument("march: q/G shape mismatch");

    Trajectory traj;
    traj.config = cfg_;
    traj.V.reserve(cfg_.N + 1);
    traj.u.reserve(cfg_.N + 1);
    traj.V.emplace_back(dim, Real(0));
    traj.u.push_back(v);

    const Vector Av = matvec(A_, v);
    for (int n = 1; n <= cfg_.N; ++n) {
        Vector rhs = rhs_at(traj.V, Av, q, G, n);
        Vector Vn = lu_->solve(rhs);
        Vector un(dim);
        for (std::size_t i = 0; i < dim; ++i) un[i] = v[i] + Vn[i];
        traj.V.push_back(std::move(Vn));
        traj.u.push_back(std::move(un));
    }
    return traj;
}

Trajectory IdmBdfkStepper::march_baseline(const Vector& v, const Vector& q,
                                          const std::vector<Real>& g) const {
    if (cfg_.m != 0) throw std::invalid_argument("march_baseline: m must be 0");
    const std::size_t dim = A_.rows();
    if (v.size() != dim) throw std::invalid_argument("march_baseline: v has wrong length");
    if (!q.empty() && (q.size() != dim || g.size() != static_cast<std::size_t>(cfg_.N) + 1))
        throw std::invalid_argument("march_baseline: q/g shape mismatch");

    Trajectory traj;
    traj.config = cfg_;
    traj.V.reserve(cfg_.N + 1);
    traj.u.reserve(cfg_.N + 1);
    traj.V.emplace_back(dim, Real(0));
    traj.u.push_back(v);

    const Vector Av = matvec(A_, v);
    for (int n = 1; n <= cfg_.N; ++n) {
        Vector rhs = rhs_at(traj.V, Av, q, g, n);
        Vector Vn = lu_->solve(rhs);
        Vector un(dim);
        for (std::size_t i = 0; i < dim; ++i) un[i] = v[i] + Vn[i];
        traj.V.push_back(std::move(Vn));
        traj.u.push_back(std::move(un));
    }
    return traj;
}

Real IdmBdfkStepper::residual(const Trajectory& traj, const Vector& v, const Vector& q,
                              const std::vector<Real>& G_or_g, int n) const {
    if (n < 1 || n > cfg_.N) throw std::invalid_argument("residual: n out of range");
    const std::size_t dim = A_.rows();
    const Vector Av = matvec(A_, v);
    Vector rhs = rhs_at(traj.V, Av, q, G_or_g, n);
    // LHS = w0 tau^-alpha V^n - A V^n.
    const Real shift = walpha_.weights[0] * pow(tau_, -cfg_.alpha);
    Vector AVn = matvec(A_, traj.V[n]);
    Real worst(0);
    for (std::size_t i = 0; i < dim; ++i) {
        Real r = shift * traj.V[n][i] - AVn[i] - rhs[i];
        if (abs(r) > worst) worst = abs(r);
    }
    return worst;
}

} // namespace subdiffcq
