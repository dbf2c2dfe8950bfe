#include "subdiffcq/source_smoothing.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace subdiffcq;

namespace {

bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

// Exact moment int_{-1}^{1} (1+x)^beta x^k dx via u = 1+x and binomial expansion.
Real jacobi_moment(const Real& beta, int k) {
    Real sum(0);
    long long binom = 1;
    for (int j = 0; j <= k; ++j) {
        Real term = Real(binom) * pow(Real(2), beta + j + 1) / (beta + j + 1);
        if ((k - j) % 2) term = -term;
        sum += term;
        binom = binom * (k - j) / (j + 1);
    }
    return sum;
}

// Composite Gauss reference for int_a^b f, geometrically graded toward one
// endpoint so that endpoint power singularities are resolved to ~1e-40.
Real graded_integral(const ScalarFn& f, const Real& a, const Real& b, bool grade_left,
                     const QuadRule& gl) {
    const int panels = 220;
    Real sum(0);
    Real len = b - a;
    Real hi = len;
    for (int p = 0; p < panels; ++p) {
        Real lo = (p + 1 < panels) ? Real(len / pow(Real(2), p + 1)) : Real(0);
        Real pa = grade_left ? Real(a + lo) : Real(b - hi);
        Real pb = grade_left ? Real(a + hi) : Real(b - lo);
        Real half = (pb - pa) / 2;
        Real mid = (pa + pb) / 2;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            sum += gl.weights[i] * half * f(mid + half * gl.nodes[i]);
        hi = lo;
    }
    return sum;
}

Real ref_product(const Real& mu, int m, const Real& t, const ScalarFn& f, const QuadRule& gl) {
    auto integrand = [&](const Real& s) {
        return pow(t - s, m - 1) * pow(s, mu) * f(s);
    };
    return graded_integral(integrand, Real(0), t, /*grade_left=*/true, gl) / tgamma(Real(m));
}

Real ref_convolution(const Real& mu, int m, const Real& t, const ScalarFn& f,
                     const QuadRule& gl) {
    auto integrand = [&](const Real& s) { return pow(t - s, mu + m) * f(s); };
    return tgamma(mu + 1) / tgamma(mu + m + 1) *
           graded_integral(integrand, Real(0), t, /*grade_left=*/false, gl);
}

ScalarFn exp_plus_one() {
    return [](const Real& s) { return exp(s) + 1; };
}

} // namespace

TEST_CASE("jacobi_rule with beta=0 is Gauss-Legendre") {
    prec::set_working_bits(256);
    auto r1 = jacobi_rule(Real(0), 1);
    CHECK(near(r1.nodes[0], Real(0), prec::tolerance(5)));
    CHECK(near(r1.weights[0], Real(2), prec::tolerance(5)));

    auto r2 = jacobi_rule(Real(0), 2);
    Real inv_sqrt3 = 1 / sqrt(Real(3));
    CHECK(near(r2.nodes[0], -inv_sqrt3, prec::tolerance(5)));
    CHECK(near(r2.nodes[1], inv_sqrt3, prec::tolerance(5)));
    CHECK(near(r2.weights[0], Real(1), prec::tolerance(5)));
    CHECK(near(r2.weights[1], Real(1), prec::tolerance(5)));

    // n = 5 is exact through degree 9.
    auto r5 = jacobi_rule(Real(0), 5);
    for (int k = 0; k <= 9; ++k) {
        Real quad(0);
        for (int i = 0; i < 5; ++i) quad += r5.weights[i] * pow(r5.nodes[i], k);
        Real exact = (k % 2) ? Real(0) : Real(2) / (k + 1);
        CHECK(near(quad, exact, prec::tolerance(5)));
    }
}

TEST_CASE("jacobi_rule moments for singular weight") {
    prec::set_working_bits(256);
    Real beta = Real(-4) / 10;
    auto r = jacobi_rule(beta, 8);

    Real wsum(0);
    for (const auto& w : r.weights) wsum += w;
    CHECK(near(wsum, pow(Real(2), Real(6) / 10) / (Real(6) / 10), prec::tolerance(5)));

    // Exactness through degree 2n-1 = 15 against closed-form moments.
    for (int k = 0; k <= 15; ++k) {
        Real quad(0);
        for (int i = 0; i < 8; ++i) quad += r.weights[i] * pow(r.nodes[i], k);
        // The alternating binomial reference loses a few digits to cancellation.
        CHECK(near(quad, jacobi_moment(beta, k), prec::tolerance(12)));
    }
}

TEST_CASE("jacobi_rule nodes sorted inside (-1,1), weights positive") {
    prec::set_working_bits(256);
    for (const Real& beta : {Real(0), Real(-4) / 10, Real(33) / 10}) {
        auto r = jacobi_rule(beta, 16);
        for (int i = 0; i < 16; ++i) {
            CHECK(r.nodes[i] > -1);
            CHECK(r.nodes[i] < 1);
            CHECK(r.weights[i] > 0);
            if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
        }
    }
}

TEST_CASE("smooth_pure_power closed form") {
    prec::set_working_bits(256);
    Real mu = Real(-4) / 10;

    CHECK(near(smooth_pure_power(mu, 1, Real(1)), tgamma(Real(6) / 10) / tgamma(Real(16) / 10),
               prec::tolerance(5)));
    CHECK(near(smooth_pure_power(mu, 2, Real(1)), tgamma(Real(6) / 10) / tgamma(Real(26) / 10),
               prec::tolerance(5)));
    CHECK(smooth_pure_power(mu, 3, Real(0)) == 0);

    // t-scaling: J^m t^mu is homogeneous of degree mu + m.
    Real t = Real(3) / 4;
    CHECK(near(smooth_pure_power(mu, 2, t), smooth_pure_power(mu, 2, Real(1)) * pow(t, mu + 2),
               prec::tolerance(5)));

    CHECK_THROWS_AS(smooth_pure_power(Real(-1), 1, Real(1)), std::invalid_argument);
    CHECK_THROWS_AS(smooth_pure_power(mu, 0, Real(1)), std::invalid_argument);
    CHECK_THROWS_AS(smooth_pure_power(mu, 1, Real(-1)), std::invalid_argument);
}

TEST_CASE("smooth_product matches graded composite reference") {
    prec::set_working_bits(256);
    auto gl = jacobi_rule(Real(0), 24);
    TimeKernelTerm term;
    term.exponent = Real(-4) / 10;
    term.smooth_factor = exp_plus_one();
    Real tol = Real(1) / pow(Real(10), 30);
    for (int m : {1, 2, 3}) {
        for (const Real& t : {Real(7) / 10, Real(1)}) {
            Real got = smooth_product(term, m, t, 64);
            Real want = ref_product(term.exponent, m, t, term.smooth_factor, gl);
            CHECK(near(got, want, tol));
        }
    }
}

TEST_CASE("smooth_convolution matches graded composite reference") {
    prec::set_working_bits(256);
    auto gl = jacobi_rule(Real(0), 24);
    TimeKernelTerm term;
    term.exponent = Real(3) / 10;
    term.smooth_factor = exp_plus_one();
    Real tol = Real(1) / pow(Real(10), 30);
    for (int m : {1, 2, 4}) {
        Real got = smooth_convolution(term, m, Real(1), 64);
        Real want = ref_convolution(term.exponent, m, Real(1), term.smooth_factor, gl);
        CHECK(near(got, want, tol));
    }
}

TEST_CASE("smooth_convolution with unit factor is one extra integration") {
    prec::set_working_bits(256);
    Real mu = Real(3) / 10;
    TimeKernelTerm plain;
    plain.exponent = mu;
    TimeKernelTerm unit;
    unit.exponent = mu;
    unit.smooth_factor = [](const Real&) { return Real(1); };
    for (int m : {1, 2, 3}) {
        Real t = Real(9) / 10;
        Real closed = smooth_convolution(plain, m, t, 32);
        CHECK(near(closed, smooth_pure_power(mu, m + 1, t), prec::tolerance(5)));
        CHECK(near(smooth_convolution(unit, m, t, 32), closed, prec::tolerance(10)));
    }
}

TEST_CASE("pure-power smoothing satisfies the semigroup law") {
    prec::set_working_bits(256);
    Real mu = Real(-4) / 10;
    Real t = Real(4) / 5;
    for (int m1 : {1, 2}) {
        for (int m2 : {1, 3}) {
            // J^{m1}(J^{m2} t^mu) = (Gamma(mu+1)/Gamma(mu+m2+1)) J^{m1} t^{mu+m2}.
            Real composed = tgamma(mu + 1) / tgamma(mu + m2 + 1) *
                            smooth_pure_power(mu + m2, m1, t);
            CHECK(near(smooth_pure_power(mu, m1 + m2, t), composed, prec::tolerance(5)));
        }
    }
}

TEST_CASE("build_smoothed_table pure-power values match the closed form") {
    prec::set_working_bits(256);
    SourceSpec spec;
    spec.mode = KernelMode::PurePower;
    spec.time_terms.push_back({Real(2), Real(-4) / 10, nullptr});
    int N = 12;
    Real T(1);
    auto table = build_smoothed_table(spec, 2, N, T, 16, Exec::Serial);
    CHECK(table.values.size() == std::size_t(N + 1));
    CHECK(table.values[0] == 0);
    for (int n = 1; n <= N; ++n)
        CHECK(near(table.values[n], 2 * smooth_pure_power(Real(-4) / 10, 2, T * n / N),
                   prec::tolerance(5)));
}

TEST_CASE("build_smoothed_table is additive over terms") {
    prec::set_working_bits(256);
    TimeKernelTerm t1{Real(1), Real(0), exp_plus_one()};
    TimeKernelTerm t2{Real(1), Real(-4) / 10, exp_plus_one()};
    SourceSpec both;
    both.mode = KernelMode::Product;
    both.time_terms = {t1, t2};
    SourceSpec only1 = both;
    only1.time_terms = {t1};
    SourceSpec only2 = both;
    only2.time_terms = {t2};
    int N = 8;
    auto tb = build_smoothed_table(both, 2, N, Real(1), 48, Exec::Serial);
    auto ta = build_smoothed_table(only1, 2, N, Real(1), 48, Exec::Serial);
    auto tc = build_smoothed_table(only2, 2, N, Real(1), 48, Exec::Serial);
    for (int n = 0; n <= N; ++n)
        CHECK(tb.values[n] == ta.values[n] + tc.values[n]);
}

TEST_CASE("serial and parallel tables are bit-identical") {
    prec::set_working_bits(256);
    SourceSpec spec;
    spec.mode = KernelMode::Convolution;
    spec.time_terms.push_back({Real(1), Real(3) / 10, exp_plus_one()});
    int N = 16;
    auto ser = build_smoothed_table(spec, 3, N, Real(1), 48, Exec::Serial);
    auto par = build_smoothed_table(spec, 3, N, Real(1), 48, Exec::Parallel);
    for (int n = 0; n <= N; ++n) CHECK(ser.values[n] == par.values[n]);
}

TEST_CASE("first smoothed value decays like tau^(mu+m)") {
    prec::set_working_bits(256);
    SourceSpec spec;
    spec.mode = KernelMode::Product;
    Real mu = Real(-4) / 10;
    spec.time_terms.push_back({Real(1), mu, exp_plus_one()});
    int m = 2;
    std::vector<Real> g1;
    for (int N : {8, 16, 32, 64})
        g1.push_back(build_smoothed_table(spec, m, N, Real(1), 48, Exec::Serial).values[1]);
    for (std::size_t i = 1; i < g1.size(); ++i) {
        double slope = static_cast<double>(log(g1[i - 1] / g1[i]) / log(Real(2)));
        CHECK(std::abs(slope - static_cast<double>(mu + m)) < 0.1);
    }
}

TEST_CASE("quadrature doubling leaves values unchanged to tolerance") {
    prec::set_working_bits(256);
    TimeKernelTerm term{Real(1), Real(-4) / 10, exp_plus_one()};
    Real a = smooth_product(term, 1, Real(1), 48);
    Real b = smooth_product(term, 1, Real(1), 96);
    CHECK(near(a, b, prec::tolerance(12)));
    Real c = smooth_convolution(term, 2, Real(1), 48);
    Real d = smooth_convolution(term, 2, Real(1), 96);
    CHECK(near(c, d, prec::tolerance(12)));
}

TEST_CASE("eval_time_kernel pointwise values") {
    prec::set_working_bits(256);
    Real mu = Real(-4) / 10;
    Real t = Real(3) / 5;

    SourceSpec pure;
    pure.mode = KernelMode::PurePower;
    pure.time_terms.push_back({Real(3), mu, nullptr});
    CHECK(near(eval_time_kernel(pure, t, 32), 3 * pow(t, mu), prec::tolerance(5)));

    SourceSpec prod;
    prod.mode = KernelMode::Product;
    prod.time_terms.push_back({Real(1), mu, exp_plus_one()});
    CHECK(near(eval_time_kernel(prod, t, 32), pow(t, mu) * (exp(t) + 1), prec::tolerance(5)));

    SourceSpec conv;
    conv.mode = KernelMode::Convolution;
    conv.time_terms.push_back({Real(1), mu, exp_plus_one()});
    auto gl = jacobi_rule(Real(0), 24);
    auto integrand = [&](const Real& s) { return pow(t - s, mu) * (exp(s) + 1); };
    Real want = graded_integral(integrand, Real(0), t, /*grade_left=*/false, gl);
    CHECK(near(eval_time_kernel(conv, t, 64), want, Real(1) / pow(Real(10), 30)));

    SourceSpec none;
    none.mode = KernelMode::None;
    none.time_terms.push_back({Real(1), Real(0), nullptr});
    CHECK_THROWS_AS(eval_time_kernel(none, t, 32), std::invalid_argument);
}

TEST_CASE("argument validation") {
    prec::set_working_bits(256);
    CHECK_THROWS_AS(jacobi_rule(Real(-1), 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_rule(Real(0), 0), std::invalid_argument);

    SourceSpec none;
    none.mode = KernelMode::None;
    CHECK_THROWS_AS(build_smoothed_table(none, 1, 4, Real(1), 8), std::invalid_argument);

    SourceSpec bad;
    bad.mode = KernelMode::PurePower;
    bad.time_terms.push_back({Real(1), Real(0), exp_plus_one()});
    CHECK_THROWS_AS(build_smoothed_table(bad, 1, 4, Real(1), 8), std::invalid_argument);

    SourceSpec ok;
    ok.mode = KernelMode::PurePower;
    ok.time_terms.push_back({Real(1), Real(0), nullptr});
    CHECK_THROWS_AS(build_smoothed_table(ok, 0, 4, Real(1), 8), std::invalid_argument);
    CHECK_THROWS_AS(build_smoothed_table(ok, 1, 0, Real(1), 8), std::invalid_argument);
    CHECK_THROWS_AS(build_smoothed_table(ok, 1, 4, Real(0), 8), std::invalid_argument);
}
