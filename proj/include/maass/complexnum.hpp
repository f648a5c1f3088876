#ifndef MAASS_COMPLEXNUM_HPP
#define MAASS_COMPLEXNUM_HPP

#include "maass/real.hpp"

namespace maass {

// Minimal complex type over Real. std::complex is only specified for the
// builtin floating types, so we roll our own.
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}

    Complex conj() const { return {re, -im}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Real norm_sq(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) {
    using boost::multiprecision::hypot;
    return hypot(a.re, a.im);
}
inline Real arg(const Complex& a) {
    using boost::multiprecision::atan2;
    return atan2(a.im, a.re);
}

} // namespace maass

#endif
