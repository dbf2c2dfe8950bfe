#include "subdiffcq/cq_weights.hpp"

#include "subdiffcq/complex.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <utility>

namespace subdiffcq {

namespace {

// Temporarily raises the thread default precision; the FFT cross-check path
// needs guard digits to absorb the rho^-n amplification of rounding noise.
class ScopedPrecisionBoost {
public:
    explicit ScopedPrecisionBoost(unsigned factor)
        : saved_(Real::default_precision()) {
        Real::default_precision(saved_ * factor);
    }
    ~ScopedPrecisionBoost() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

// In-place radix-2 FFT, sign = -1 forward, +1 inverse (unscaled).
void fft(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const Real pi = boost::math::constants::pi<Real>();
    for (std::size_t len = 2; len <= n; len <<= 1) {
        Real ang = sign * 2 * pi / static_cast<long>(len);
        Complex wl(cos(ang), sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(Real(1), Real(0));
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex u = a[i + j];
                Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Complex poly_eval(const PolyCoeffs& poly, const Complex& x) {
    Complex r(poly.coeffs.back());
    for (std::size_t j = poly.coeffs.size() - 1; j-- > 0;) {
        r *= x;
        r += Complex(poly.coeffs[j]);
    }
    return r;
}

std::vector<Real> poly_mul(const std::vector<Real>& a, const std::vector<Real>& b) {
    std::vector<Real> c(a.size() + b.size() - 1, Real(0));
    Real t;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            t = a[i];
            t *= b[j];
            c[i + j] += t;
        }
    return c;
}

} // namespace

PolyCoeffs bdf_poly(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("bdf_poly: k must be in 1..6");
    // tau*delta_{tau,k}(xi) = sum_{j=1..k} (1-xi)^j / j; coefficient of xi^i is
    // sum_{j=max(i,1)..k} (-1)^i C(j,i) / j, accumulated as exact rationals and
    // rendered once at the working precision.
    using Rat = boost::multiprecision::mpq_rational;
    std::vector<Rat> exact(k + 1, Rat(0));
    for (int j = 1; j <= k; ++j) {
        // binomial row C(j, i)
        long long binom = 1;
        for (int i = 0; i <= j; ++i) {
            Rat term(binom, j);
            if (i % 2) term = -term;
            exact[i] += term;
            binom = binom * (j - i) / (i + 1);
        }
    }
    PolyCoeffs p;
    p.coeffs.reserve(k + 1);
    for (const auto& r : exact) p.coeffs.emplace_back(r);
    return p;
}

WeightTable frac_power_weights(const PolyCoeffs& poly, const Real& p, int N) {
    if (N < 0) throw std::invalid_argument("frac_power_weights: N must be >= 0");
    if (poly.coeffs.empty() || poly.coeffs[0] <= 0)
        throw std::invalid_argument("frac_power_weights: constant coefficient must be positive");
    const int k = poly.degree();
    const Real& c0 = poly.coeffs[0];

    WeightTable w;
    w.order = p;
    w.k = k;
    w.weights.assign(N + 1, Real(0));
    w.weights[0] = pow(c0, p);
    Real t;
    for (int n = 1; n <= N; ++n) {
        Real s(0);
        const int jmax = std::min(n, k);
        for (int j = 1; j <= jmax; ++j) {
            t = (p + 1) * j - n;
            t *= poly.coeffs[j];
            t *= w.weights[n - j];
            s += t;
        }
        s /= c0;
        s /= n;
        w.weights[n] = std::move(s);
    }
    return w;
}

WeightTable frac_power_weights_fft(const PolyCoeffs& poly, const Real& p, int N) {
    if (N < 0) throw std::invalid_argument("frac_power_weights_fft: N must be >= 0");
    if (poly.coeffs.empty() || poly.coeffs[0] <= 0)
        throw std::invalid_argument("frac_power_weights_fft: constant coefficient must be positive");

    const Real tol = prec::tolerance(10);
    ScopedPrecisionBoost guard(2);

    const unsigned digits = prec::working_digits();
    // rho = eps^(1/(2N)) with eps = 10^(-digits/2); aliasing ~ rho^M decays
    // with the sample count M, the rounding noise grows like rho^(-N).
    const Real eps = pow(Real(10), -static_cast<int>(digits) / Real(2));
    const Real rho = (N > 0) ? Real(pow(eps, Real(1) / (2 * N))) : Real(Real(1) / 2);

    std::size_t M = 1;
    while (M < 2 * static_cast<std::size_t>(N + 1)) M <<= 1;

    const Real pi = boost::math::constants::pi<Real>();
    while (true) {
        std::vector<Complex> samples(M);
        Real max_f(0);
        for (std::size_t i = 0; i < M; ++i) {
            Real ang = 2 * pi * static_cast<long>(i) / static_cast<long>(M);
            Complex xi(rho * cos(ang), rho * sin(ang));
            samples[i] = pow(poly_eval(poly, xi), p);
            Real a = abs(samples[i]);
            if (a > max_f) max_f = a;
        }
        // Aliasing bound: coefficients beyond the window fold back scaled by rho^M.
        Real alias = max_f * pow(rho, static_cast<long>(M)) / (1 - pow(rho, static_cast<long>(M)));
        if (alias > tol) {
            if (M >= (1u << 16))
                throw AccuracyError("frac_power_weights_fft: tail estimate " + alias.str(6) +
                                    " above tolerance at M=" + std::to_string(M));
            M <<= 1;
            continue;
        }
        fft(samples, -1);
        WeightTable w;
        w.order = p;
        w.k = poly.degree();
        w.weights.reserve(N + 1);
        Real rpow(1);
        for (int n = 0; n <= N; ++n) {
            w.weights.push_back(samples[n].re / (rpow * static_cast<long>(M)));
            rpow *= rho;
        }
        return w;
    }
}

WeightTable int_power_weights(const PolyCoeffs& poly, int m, int N) {
    if (m < 1) throw std::invalid_argument("int_power_weights: m must be >= 1");
    if (N < 0) throw std::invalid_argument("int_power_weights: N must be >= 0");
    std::vector<Real> acc = poly.coeffs;
    for (int i = 1; i < m; ++i) acc = poly_mul(acc, poly.coeffs);
    acc.resize(N + 1, Real(0));
    WeightTable w;
    w.order = m;
    w.k = poly.degree();
    w.weights = std::move(acc);
    return w;
}

EulerianRow eulerian_coeffs(int l) {
    if (l < 1 || l > 12) throw std::invalid_argument("eulerian_coeffs: l must be in 1..12");
    // a_{l,j} = j a_{l-1,j} + (l+1-j) a_{l-1,j-1}, a_{0,0} = 1.
    std::vector<std::int64_t> prev{1}; // row l=0, index 0
    for (int r = 1; r <= l; ++r) {
        std::vector<std::int64_t> cur(r + 1, 0); // indices 0..r, index 0 stays 0
        for (int j = 1; j <= r; ++j) {
            std::int64_t left = (j < static_cast<int>(prev.size())) ? prev[j] : 0;
            std::int64_t up = (j - 1 < static_cast<int>(prev.size())) ? prev[j - 1] : 0;
            cur[j] = j * left + static_cast<std::int64_t>(r + 1 - j) * up;
        }
        prev = std::move(cur);
    }
    EulerianRow row;
    row.l = l;
    row.a.assign(prev.begin() + 1, prev.end());
    return row;
}

Real eulerian_gamma(const EulerianRow& row, const Real& x) {
    Real num(0);
    for (std::size_t j = row.a.size(); j-- > 0;) {
        num *= x;
        num += Real(row.a[j]);
    }
    num *= x; // lowest power is x^1
    return num / pow(1 - x, row.l + 1);
}

} // namespace subdiffcq
