#include "subdiffcq/source_smoothing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subdiffcq {

namespace {

// Symmetric tridiagonal QL with implicit shifts, tracking the first row of
// the eigenvector matrix (all that Golub-Welsch needs for the weights).
void tql_first_components(Vector& d, Vector& e, Vector& z) {
    const int n = static_cast<int>(d.size());
    const Real eps = prec::tolerance(4);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                Real dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 100)
                    throw AccuracyError("jacobi_rule: eigen-iteration did not converge");
                Real g = (d[l + 1] - d[l]) / (2 * e[l]);
                Real r = hypot(g, Real(1));
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? Real(abs(r)) : Real(-abs(r))));
                Real s(1), c(1), p(0);
                for (int i = m - 1; i >= l; --i) {
                    Real f = s * e[i];
                    Real b = c * e[i];
                    r = hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // rotate first components
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}

Real pow_int(const Real& x, int n) {
    Real r(1), b = x;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

} // namespace

QuadRule jacobi_rule(const Real& beta, int n) {
    if (!(beta > -1)) throw std::invalid_argument("jacobi_rule: beta must be > -1");
    if (n < 1) throw std::invalid_argument("jacobi_rule: n must be >= 1");

    // Monic three-term recurrence for the Jacobi weight (1-x)^0 (1+x)^beta.
    Vector d(n), e(n, Real(0)), z(n, Real(0));
    d[0] = beta / (beta + 2);
    for (int j = 1; j < n; ++j) {
        Real tb = 2 * j + beta;
        d[j] = beta * beta / (tb * (tb + 2));
        Real bj = 4 * j * j * (j + beta) * (j + beta) / (tb * tb * (tb + 1) * (tb - 1));
        e[j - 1] = sqrt(bj);
    }
    z[0] = 1;
    tql_first_components(d, e, z);

    const Real mu0 = pow(Real(2), beta + 1) / (beta + 1);
    QuadRule rule;
    rule.nodes = std::move(d);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * z[i] * z[i];

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return rule.nodes[a] < rule.nodes[b]; });
    QuadRule sorted;
    sorted.nodes.reserve(n);
    sorted.weights.reserve(n);
    for (int i : idx) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return sorted;
}

Real smooth_pure_power(const Real& mu, int m, const Real& t) {
    if (!(mu > -1)) throw std::invalid_argument("smooth_pure_power: mu must be > -1");
    if (m < 1) throw std::invalid_argument("smooth_pure_power: m must be >= 1");
    if (t < 0) throw std::invalid_argument("smooth_pure_power: t must be >= 0");
    if (t == 0) return Real(0);
    return tgamma(mu + 1) * pow(t, mu + m) / tgamma(mu + m + 1);
}

Real smooth_product(const TimeKernelTerm& term, int m, const Real& t, int quad_n) {
    if (!term.smooth_factor) return smooth_pure_power(term.exponent, m, t);
    if (!(t > 0)) throw std::invalid_argument("smooth_product: t must be > 0");
    // (1/Gamma(m)) int_0^t (t-s)^(m-1) s^mu f(s) ds  with  s = t(1+x)/2.
    QuadRule rule = jacobi_rule(term.exponent, quad_n);
    Real sum(0);
    for (int i = 0; i < quad_n; ++i) {
        Real s = t * (1 + rule.nodes[i]) / 2;
        sum += rule.weights[i] * pow_int(t - s, m - 1) * term.smooth_factor(s);
    }
    return pow(t / 2, term.exponent + 1) * sum / tgamma(Real(m));
}

Real smooth_convolution(const TimeKernelTerm& term, int m, const Real& t, int quad_n) {
    const Real& mu = term.exponent;
    if (!term.smooth_factor)
        return tgamma(mu + 1) * pow(t, mu + m + 1) / tgamma(mu + m + 2);
    if (!(t > 0)) throw std::invalid_argument("smooth_convolution: t must be > 0");
    // Gamma(mu+1)/Gamma(mu+m+1) int_0^t (t-s)^(mu+m) f(s) ds; flipping the rule
    // puts the Jacobi weight at s = t.
    QuadRule rule = jacobi_rule(mu + m, quad_n);
    Real sum(0);
    for (int i = 0; i < quad_n; ++i) {
        Real s = t * (1 - rule.nodes[i]) / 2;
        sum += rule.weights[i] * term.smooth_factor(s);
    }
    return tgamma(mu + 1) / tgamma(mu + m + 1) * pow(t / 2, mu + m + 1) * sum;
}

Real eval_time_kernel(const SourceSpec& spec, const Real& t, int quad_n) {
    if (!(t > 0)) throw std::invalid_argument("eval_time_kernel: t must be > 0");
    Real g(0);
    for (const auto& term : spec.time_terms) {
        switch (spec.mode) {
        case KernelMode::PurePower:
            g += term.coefficient * pow(t, term.exponent);
            break;
        case KernelMode::Product:
            g += term.coefficient * pow(t, term.exponent) *
                 (term.smooth_factor ? term.smooth_factor(t) : Real(1));
            break;
        case KernelMode::Convolution: {
            // (t^mu * f)(t) = int_0^t (t-s)^mu f(s) ds, weight at s = t.
            if (!term.smooth_factor) {
                g += term.coefficient * pow(t, term.exponent + 1) / (term.exponent + 1);
                break;
            }
            QuadRule rule = jacobi_rule(term.exponent, quad_n);
            Real sum(0);
            for (int i = 0; i < quad_n; ++i)
                sum += rule.weights[i] * term.smooth_factor(t * (1 - rule.nodes[i]) / 2);
            g += term.coefficient * pow(t / 2, term.exponent + 1) * sum;
            break;
        }
        case KernelMode::None:
            throw std::invalid_argument("eval_time_kernel: source mode is none");
        }
    }
    return g;
}

namespace {

Real smooth_term(const SourceSpec& spec, const TimeKernelTerm& term, int m, const Real& t,
                 int quad_n) {
    switch (spec.mode) {
    case KernelMode::PurePower:
        return term.coefficient * smooth_pure_power(term.exponent, m, t);
    case KernelMode::Product:
        return term.coefficient * smooth_product(term, m, t, quad_n);
    case KernelMode::Convolution:
        return term.coefficient * smooth_convolution(term, m, t, quad_n);
    case KernelMode::None:
        break;
    }
    throw std::invalid_argument("build_smoothed_table: source mode is none");
}

} // namespace

SmoothedTable build_smoothed_table(const SourceSpec& spec, int m, int N, const Real& T,
                                   int quad_n, Exec exec) {
    if (spec.mode == KernelMode::None)
        throw std::invalid_argument("build_smoothed_table: source mode is none");
    if (spec.mode == KernelMode::PurePower)
        for (const auto& term : spec.time_terms)
            if (term.smooth_factor)
                throw std::invalid_argument(
                    "build_smoothed_table: pure_power terms must have no smooth factor");
    if (m < 1 || N < 1 || !(T > 0) || quad_n < 1)
        throw std::invalid_argument("build_smoothed_table: bad parameters");

    SmoothedTable table;
    table.m = m;
    table.quadrature_order = quad_n;
    table.values.assign(N + 1, Real(0));
    const Real tau = prec::at_working(T) / N;

    auto eval_at = [&](int n, int nodes) {
        Real t = tau * n;
        Real g(0);
        for (const auto& term : spec.time_terms) g += smooth_term(spec, term, m, t, nodes);
        return g;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            prec::apply_thread_precision();
#pragma omp for schedule(dynamic, 8)
            for (int n = 1; n <= N; ++n) table.values[n] = eval_at(n, quad_n);
        }
    } else {
        for (int n = 1; n <= N; ++n) table.values[n] = eval_at(n, quad_n);
    }

    // Spectral convergence check at the last node: doubling the rule must not
    // move the value by more than the declared tolerance.
    if (spec.mode != KernelMode::PurePower) {
        Real refined = eval_at(N, 2 * quad_n);
        Real scale = abs(refined);
        if (scale < 1) scale = 1;
        if (abs(refined - table.values[N]) > prec::tolerance(15) * scale)
            throw AccuracyError("build_smoothed_table: quadrature not converged at n=" +
                                std::to_string(N));
    }
    return table;
}

} // namespace subdiffcq
