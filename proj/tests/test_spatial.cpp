#include "subdiffcq/spatial.hpp"

#include <doctest.h>

#ifdef HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

#include <stdexcept>

using namespace subdiffcq;

namespace {

bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

Real pi_value() { return 4 * atan(Real(1)); }

} // namespace

TEST_CASE("build_spatial points are Chebyshev-Gauss-Lobatto") {
    prec::set_working_bits(256);
    auto op = build_spatial(4);
    CHECK(op.M == 4);
    CHECK(op.points.size() == 5);
    CHECK(near(op.points[0], Real(1), prec::tolerance(5)));
    CHECK(near(op.points[1], sqrt(Real(2)) / 2, prec::tolerance(5)));
    CHECK(near(op.points[2], Real(0), prec::tolerance(5)));
    CHECK(near(op.points[3], -sqrt(Real(2)) / 2, prec::tolerance(5)));
    CHECK(near(op.points[4], Real(-1), prec::tolerance(5)));
    CHECK(op.A_interior.rows() == 3);
    CHECK(op.A_interior.cols() == 3);
    CHECK(op.norm_weights.size() == 3);
    CHECK_THROWS_AS(build_spatial(3), std::invalid_argument);
}

TEST_CASE("differentiation matrix is exact on polynomials") {
    prec::set_working_bits(256);
    auto op = build_spatial(8);
    int n = op.M + 1;

    // Row sums vanish: D applied to the constant is zero.
    for (int i = 0; i < n; ++i) {
        Real s(0);
        for (int j = 0; j < n; ++j) s += op.D(i, j);
        CHECK(near(s, Real(0), prec::tolerance(8)));
    }

    // x^3 -> 3x^2 at every node.
    for (int i = 0; i < n; ++i) {
        Real d(0);
        for (int j = 0; j < n; ++j) d += op.D(i, j) * op.points[j] * op.points[j] * op.points[j];
        CHECK(near(d, 3 * op.points[i] * op.points[i], prec::tolerance(8)));
    }
}

TEST_CASE("interior Laplacian block is exact on x^2 minus boundary data") {
    prec::set_working_bits(256);
    auto op = build_spatial(8);
    // v = x^2 - 1 vanishes on the boundary, so A_interior applied to its
    // interior samples must equal the full second derivative, 2.
    Vector v = sample_interior(op, [](const Real& x) { return x * x - 1; });
    Vector av = matvec(op.A_interior, v);
    for (const auto& e : av) CHECK(near(e, Real(2), prec::tolerance(8)));
}

TEST_CASE("interior Laplacian is spectrally accurate on a sine eigenfunction") {
    prec::set_working_bits(256);
    Real pi = pi_value();
    // u(x) = sin(pi (x+1)/2) vanishes at x = +-1 and u'' = -(pi/2)^2 u.
    Real lambda = pi * pi / 4;
    auto op = build_spatial(32);
    Vector u = sample_interior(op, [&](const Real& x) { return sin(pi * (x + 1) / 2); });
    Vector au = matvec(op.A_interior, u);
    Real err(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        Real e = abs(au[i] + lambda * u[i]);
        if (e > err) err = e;
    }
    CHECK(err <= Real(1) / pow(Real(10), 20));
}

#ifdef HAVE_EIGEN
TEST_CASE("interior Laplacian eigenvalues are real and negative") {
    prec::set_working_bits(256);
    auto op = build_spatial(16);
    int n = op.M - 1;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(op.A_interior(i, j));
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    Real pi = pi_value();
    for (int i = 0; i < n; ++i) {
        auto ev = es.eigenvalues()[i];
        CHECK(std::abs(ev.imag()) < 1e-8 * std::abs(ev.real()));
        CHECK(ev.real() < 0);
    }
    // The smallest magnitude eigenvalue approximates -(pi/2)^2.
    double lo = 1e300;
    for (int i = 0; i < n; ++i) lo = std::min(lo, std::abs(es.eigenvalues()[i].real()));
    CHECK(std::abs(lo - static_cast<double>(pi * pi / 4)) < 1e-10);
}
#endif

TEST_CASE("discrete_l2_norm on reference profiles") {
    prec::set_working_bits(256);
    auto op = build_spatial(32);
    int n = op.M - 1;

    Vector zero(n, Real(0));
    CHECK(discrete_l2_norm(zero, op) == 0);

    // ||1||^2 is the interior weight sum: 2 minus the two boundary weights,
    // each 1/(M^2-1) for even M.
    Vector one(n, Real(1));
    Real wsum = 2 - Real(2) / (op.M * op.M - 1);
    CHECK(near(discrete_l2_norm(one, op), sqrt(wsum), prec::tolerance(8)));

    // ||sqrt(1-x^2)||^2 = int (1-x^2) dx = 4/3 -- the integrand is polynomial,
    // so Clenshaw-Curtis on M=32 is exact.
    Vector v = sample_interior(op, [](const Real& x) { return sqrt(1 - x * x); });
    CHECK(near(discrete_l2_norm(v, op), 2 / sqrt(Real(3)), prec::tolerance(8)));

    // Homogeneity.
    Vector v3 = v;
    for (auto& e : v3) e *= 3;
    CHECK(near(discrete_l2_norm(v3, op), 3 * discrete_l2_norm(v, op), prec::tolerance(8)));

    Vector bad(n + 1, Real(0));
    CHECK_THROWS_AS(discrete_l2_norm(bad, op), std::invalid_argument);
}

TEST_CASE("norm weights converge to smooth integrals for odd and even M") {
    prec::set_working_bits(256);
    for (int M : {48, 49}) {
        auto op = build_spatial(M);
        Vector g = sample_interior(op, [](const Real& x) { return exp(x) * (1 - x * x); });
        Real quad(0);
        for (std::size_t i = 0; i < g.size(); ++i) quad += op.norm_weights[i] * g[i];
        // int_{-1}^{1} e^x (1 - x^2) dx = 4/e.
        Real want = 4 / exp(Real(1));
        CHECK(near(quad, want, prec::tolerance(20)));
    }
}
