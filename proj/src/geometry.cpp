#include "maass/geometry.hpp"

namespace maass {

namespace {
const Real kDetTol("1e-12");
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    Complex det = a_ * d_ - b_ * c_;
    if (abs(det - Complex(1)) > kDetTol)
        throw DomainError("MoebiusMap: determinant must be 1, got " +
                          to_string(det.re, 8) + " + " + to_string(det.im, 8) + "i");
}

bool MoebiusMap::is_real(const Real& tol) const {
    using boost::multiprecision::abs;
    return abs(a_.im) < tol && abs(b_.im) < tol && abs(c_.im) < tol && abs(d_.im) < tol;
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
    return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

bool MoebiusMap::same_map(const MoebiusMap& o, const Real& tol) const {
    auto close = [&](const MoebiusMap& m, int sign) {
        Complex s{Real(sign), Real(0)};
        return abs(a_ - s * m.a_) < tol && abs(b_ - s * m.b_) < tol &&
               abs(c_ - s * m.c_) < tol && abs(d_ - s * m.d_) < tol;
    };
    return close(o, 1) || close(o, -1);
}

MoebiusMap MoebiusMap::identity() {
    return MoebiusMap(Complex(1), Complex(0), Complex(0), Complex(1));
}

MoebiusMap MoebiusMap::translation(const Real& t) {
    return MoebiusMap(Complex(1), Complex(t), Complex(0), Complex(1));
}

Complex moebius(const MoebiusMap& m, const Complex& z) {
    return (m.a() * z + m.b()) / (m.c() * z + m.d());
}

HPoint apply(const MoebiusMap& m, const HPoint& z, const Precision& prec) {
    Complex im = moebius(m, z.to_complex());
    if (im.im < prec.boundary_tol())
        throw BoundaryError("apply: image within tolerance of the real axis");
    return HPoint(im.re, im.im);
}

DPoint apply(const MoebiusMap& m, const DPoint& w, const Precision& prec) {
    Complex im = moebius(m, w.w);
    if (norm_sq(im) > 1 - prec.boundary_tol())
        throw BoundaryError("apply: image within tolerance of the unit circle");
    return DPoint(im);
}

namespace {
// C = [[1, -i], [1, i]], used unnormalized; conjugation cancels the scale.
Complex cayley_c(const Complex& z) {
    const Complex i{Real(0), Real(1)};
    return (z - i) / (z + i);
}
Complex cayley_c_inv(const Complex& w) {
    const Complex i{Real(0), Real(1)};
    return i * (Complex(1) + w) / (Complex(1) - w);
}
} // namespace

DPoint cayley(const HPoint& z, const Precision& prec) {
    Complex w = cayley_c(z.to_complex());
    if (norm_sq(w) > 1 - prec.boundary_tol())
        throw BoundaryError("cayley: image within tolerance of the unit circle");
    return DPoint(w);
}

HPoint cayley_inv(const DPoint& w, const Precision& prec) {
    if (abs(w.w - Complex(1)) < prec.boundary_tol())
        throw BoundaryError("cayley_inv: w = 1 maps to infinity");
    Complex z = cayley_c_inv(w.w);
    if (z.im < prec.boundary_tol())
        throw BoundaryError("cayley_inv: image within tolerance of the real axis");
    return HPoint(z.re, z.im);
}

MoebiusMap cayley_conjugate(const MoebiusMap& m) {
    // C m C^-1 with C = (1/sqrt(2i)) [[1, -i], [1, i]]; the scale cancels.
    const Complex i{Real(0), Real(1)};
    Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    Complex half{Real(1) / 2, Real(0)};
    // C [[a,b],[c,d]] C^-1, with C^-1 = (1/2)[[1, 1],[i, -i]] * (scale)
    Complex na = half * (a + d + i * b - i * c);
    Complex nb = half * (a - d - i * b - i * c);
    Complex nc = half * (a - d + i * b + i * c);
    Complex nd = half * (a + d - i * b + i * c);
    return MoebiusMap(na, nb, nc, nd);
}

MoebiusMap cayley_conjugate_inv(const MoebiusMap& m) {
    const Complex i{Real(0), Real(1)};
    Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    Complex half{Real(1) / 2, Real(0)};
    // C^-1 [[a,b],[c,d]] C
    Complex na = half * (a + b + c + d);
    Complex nb = half * i * (b + d - a - c);
    Complex nc = half * i * (a + b - c - d);
    Complex nd = half * (a - b - c + d);
    return MoebiusMap(na, nb, nc, nd);
}

PolarPoint to_polar(const HPoint& z) {
    Complex c = z.to_complex();
    return PolarPoint(abs(c), arg(c));
}

HPoint from_polar(const PolarPoint& p) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    return HPoint(p.r * cos(p.theta), p.r * sin(p.theta));
}

std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const MoebiusMap& m, const Precision& prec) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    if (!m.is_real(prec.boundary_tol()))
        throw DomainError("fixed_points: matrix must have real entries");
    Real a = m.a().re, b = m.b().re, c = m.c().re, d = m.d().re;
    if (abs(a + d) <= 2 + prec.boundary_tol())
        throw DomainError("fixed_points: matrix is not hyperbolic (|trace| <= 2)");
    if (abs(c) < prec.eps()) {
        // Upper triangular: fixes infinity and b/(d - a).
        Real zf = b / (d - a);
        return {BoundaryPoint::finite(zf), BoundaryPoint::infinity()};
    }
    // c z^2 + (d - a) z - b = 0
    Real disc = (d - a) * (d - a) + 4 * c * b;
    Real sq = sqrt(disc);
    Real r1 = (-(d - a) - sq) / (2 * c);
    Real r2 = (-(d - a) + sq) / (2 * c);
    if (r1 > r2) std::swap(r1, r2);
    return {BoundaryPoint::finite(r1), BoundaryPoint::finite(r2)};
}

MoebiusMap flare_conjugator(const Real& z1, const Real& z2, const Real& t) {
    using boost::multiprecision::sqrt;
    if (!(z1 < t && t < z2))
        throw DomainError("flare_conjugator: need z1 < t < z2");
    Real c = (t - z2) / (t - z1);
    // Matrix [[c, -c z1], [1, -z2]], determinant c (z1 - z2) > 0.
    Real det = c * (z1 - z2);
    Real s = 1 / sqrt(det);
    return MoebiusMap(Complex(c * s), Complex(-c * z1 * s), Complex(s), Complex(-z2 * s));
}

} // namespace maass
