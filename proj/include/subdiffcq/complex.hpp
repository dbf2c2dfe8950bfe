#pragma once

#include "subdiffcq/precision.hpp"

namespace subdiffcq {

// Minimal complex type over the extended-precision Real.
// std::complex is only specified for built-in floating point types.
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Real abs2(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) { return sqrt(abs2(a)); }
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = abs2(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

inline Complex exp(const Complex& a) {
    Real m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

// Principal-branch logarithm, arg in (-pi, pi].
inline Complex log(const Complex& a) { return {log(abs(a)), atan2(a.im, a.re)}; }

// Principal-branch power z^p for real p.
inline Complex pow(const Complex& a, const Real& p) {
    Complex l = log(a);
    l.re *= p;
    l.im *= p;
    return exp(l);
}

} // namespace subdiffcq
