#include "subdiffcq/oracle.hpp"

#include "subdiffcq/complex.hpp"

#include <boost/math/constants/constants.hpp>

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subdiffcq {

ContourParams ContourParams::defaults(const Real& t) {
    if (!(t > 0)) throw std::invalid_argument("ContourParams: t must be > 0");
    const Real pi = boost::math::constants::pi<Real>();
    ContourParams p;
    p.theta = 3 * pi / 4;
    p.kappa = 1 / t;
    // e^{R t cos(theta)} <= 10^-(digits+5) bounds the truncated ray tail.
    Real digits(static_cast<long>(prec::working_digits()));
    p.R = (digits * log(Real(10)) + 5) / (t * abs(cos(p.theta)));
    return p;
}

namespace {

struct ContourNode {
    Complex z;
    Complex dz_weight; // dz/dparam * quadrature weight
};

// Upper half of the contour: arc psi in [0,theta], then the ray r in [kappa,R]
// split into log-spaced Gauss-Legendre panels.
std::vector<ContourNode> upper_nodes(const ContourParams& p) {
    if (!(p.theta > boost::math::constants::half_pi<Real>() &&
          p.theta < boost::math::constants::pi<Real>()))
        throw std::invalid_argument("contour: theta must be in (pi/2, pi)");
    if (!(p.kappa > 0) || !(p.R > p.kappa))
        throw std::invalid_argument("contour: need 0 < kappa < R");
    if (p.n_arc < 1 || p.n_ray < 1)
        throw std::invalid_argument("contour: node counts must be >= 1");

    std::vector<ContourNode> nodes;

    QuadRule arc = jacobi_rule(Real(0), p.n_arc); // Gauss-Legendre on [-1,1]
    for (int i = 0; i < p.n_arc; ++i) {
        Real psi = p.theta * (1 + arc.nodes[i]) / 2;
        Complex z(p.kappa * cos(psi), p.kappa * sin(psi));
        // dz = i kappa e^{i psi} dpsi
        Complex dz(-p.kappa * sin(psi), p.kappa * cos(psi));
        nodes.push_back({z, dz * Real(arc.weights[i] * p.theta / 2)});
    }

    const int per_panel = 16;
    const int n_panels = std::max(1, (p.n_ray + per_panel - 1) / per_panel);
    QuadRule gl = jacobi_rule(Real(0), per_panel);
    const Complex eitheta(cos(p.theta), sin(p.theta));
    Real ratio = pow(p.R / p.kappa, Real(1) / n_panels);
    Real a = p.kappa;
    for (int pnl = 0; pnl < n_panels; ++pnl) {
        Real b = (pnl == n_panels - 1) ? p.R : Real(a * ratio);
        Real half = (b - a) / 2, mid = (a + b) / 2;
        for (int i = 0; i < per_panel; ++i) {
            Real r = mid + half * gl.nodes[i];
            nodes.push_back({r * eitheta, Real(gl.weights[i] * half) * eitheta});
        }
        a = b;
    }
    return nodes;
}

} // namespace

Vector contour_solution(const Real& alpha_in, const Matrix& A, const Vector& v,
                        const Real& mu_in, const Vector& q, const Real& t_in,
                        const ContourParams& params, Exec exec) {
    const Real alpha = prec::at_working(alpha_in);
    const Real mu = prec::at_working(mu_in);
    const Real t = prec::at_working(t_in);
    if (!(t > 0)) throw std::invalid_argument("contour_solution: t must be > 0");
    const std::size_t dim = A.rows();
    if (v.size() != dim) throw std::invalid_argument("contour_solution: v has wrong length");
    if (!q.empty() && q.size() != dim)
        throw std::invalid_argument("contour_solution: q has wrong length");

    std::vector<ContourNode> nodes = upper_nodes(params);

    // Truncation tail must sit below the accuracy target.
    const Real tail = exp(params.R * t * cos(params.theta));
    if (tail > prec::tolerance(10))
        throw AccuracyError("contour_solution: truncation tail estimate " + tail.str(6) +
                            " above tolerance; increase R");

    const Vector Av = matvec(A, v);
    const bool has_v = [&] {
        for (const auto& x : v)
            if (x != 0) return true;
        return false;
    }();
    const Real gamma_mu1 = q.empty() ? Real(0) : Real(tgamma(mu + 1));

    const std::size_t nn = nodes.size();
    std::vector<CVector> contrib(nn);

    auto solve_node = [&](std::size_t idx) {
        const Complex& z = nodes[idx].z;
        const Complex za = pow(z, alpha);
        CLuFactor lu(za, A);
        CVector rhs(dim, Complex{});
        if (has_v) {
            Complex zinv = Complex(Real(1)) / z;
            for (std::size_t i = 0; i < dim; ++i) rhs[i] += zinv * Complex(Av[i]);
        }
        if (!q.empty()) {
            Complex w = gamma_mu1 * pow(z, -(mu + 1));
            for (std::size_t i = 0; i < dim; ++i) rhs[i] += w * Complex(q[i]);
        }
        CVector w = lu.solve(rhs);
        Complex factor = exp(t * z) * nodes[idx].dz_weight;
        for (auto& x : w) x *= factor;
        contrib[idx] = std::move(w);
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            prec::apply_thread_precision();
#pragma omp for schedule(dynamic)
            for (std::size_t idx = 0; idx < nn; ++idx) solve_node(idx);
        }
    } else {
        for (std::size_t idx = 0; idx < nn; ++idx) solve_node(idx);
    }

    // V(t) = (1/pi) Im sum over the upper half (lower half is the conjugate).
    const Real pi = boost::math::constants::pi<Real>();
    Vector u(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Real s(0);
        for (std::size_t idx = 0; idx < nn; ++idx) s += contrib[idx][i].im;
        u[i] = v[i] + s / pi;
    }
    return u;
}

Real mittag_leffler(const Real& alpha, const Real& beta, const Real& z) {
    if (!(alpha > 0 && alpha <= 1))
        throw std::invalid_argument("mittag_leffler: alpha must be in (0,1]");
    if (abs(z) > 50)
        throw std::domain_error("mittag_leffler: |z| beyond the series regime (50)");
    const Real tol = pow(Real(10), -static_cast<int>(prec::working_digits()) - 5);
    Real sum(0), zpow(1);
    for (int j = 0;; ++j) {
        Real term = zpow / tgamma(alpha * j + beta);
        sum += term;
        if (j > 4 && abs(term) < tol * (1 + abs(sum))) break;
        if (j > 100000) throw AccuracyError("mittag_leffler: series did not converge");
        zpow *= z;
    }
    return sum;
}

Real scalar_reference(const Real& alpha, const Real& lambda, const Real& v, const Real& t) {
    if (!(lambda > 0)) throw std::invalid_argument("scalar_reference: lambda must be > 0");
    if (t < 0) throw std::invalid_argument("scalar_reference: t must be >= 0");
    if (t == 0) return v;
    return v * mittag_leffler(alpha, Real(1), -lambda * pow(t, alpha));
}

} // namespace subdiffcq
