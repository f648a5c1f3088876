#ifndef MAASS_GEOMETRY_HPP
#define MAASS_GEOMETRY_HPP

#include <utility>

#include "maass/complexnum.hpp"
#include "maass/real.hpp"

namespace maass {

// Point x+iy of the upper half-plane, y > 0 strictly.
struct HPoint {
    Real x;
    Real y;

    HPoint(Real x_, Real y_) : x(std::move(x_)), y(std::move(y_)) {
        if (!(y > 0)) throw BoundaryError("HPoint: imaginary part must be positive");
    }
    Complex to_complex() const { return {x, y}; }
};

// Point of the unit-disk model, |w| < 1 strictly.
struct DPoint {
    Complex w;

    explicit DPoint(Complex w_) : w(std::move(w_)) {
        if (!(norm_sq(w) < 1)) throw BoundaryError("DPoint: |w| must be < 1");
    }
};

// Polar coordinates of an upper half-plane point: r > 0, 0 < theta < pi.
struct PolarPoint {
    Real r;
    Real theta;

    PolarPoint(Real r_, Real theta_) : r(std::move(r_)), theta(std::move(theta_)) {
        if (!(r > 0)) throw DomainError("PolarPoint: r must be positive");
        if (!(theta > 0) || !(theta < pi_value()))
            throw DomainError("PolarPoint: theta must lie in (0, pi)");
    }
};

// A point of the boundary circle R u {inf}; fixed points of hyperbolic maps.
struct BoundaryPoint {
    bool at_infinity = false;
    Real value{0};

    static BoundaryPoint infinity() { return {true, Real(0)}; }
    static BoundaryPoint finite(Real v) { return {false, std::move(v)}; }
};

// 2x2 unit-determinant matrix acting by Moebius transformations.
// Real-entry maps act on the upper half-plane; PSU(1,1)-shaped maps
// (d = conj(a), c = conj(b)) act on the disk.
class MoebiusMap {
public:
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    const Complex& a() const { return a_; }
    const Complex& b() const { return b_; }
    const Complex& c() const { return c_; }
    const Complex& d() const { return d_; }

    bool is_real(const Real& tol) const;
    Complex trace() const { return a_ + d_; }

    MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }
    MoebiusMap operator*(const MoebiusMap& o) const;

    // Equality in PSL / PSU: entries agree up to a global sign.
    bool same_map(const MoebiusMap& o, const Real& tol) const;

    static MoebiusMap identity();
    static MoebiusMap translation(const Real& t);

private:
    Complex a_, b_, c_, d_;
};

// Moebius action on the relevant model. Throws BoundaryError if the image
// lands within tolerance of the boundary.
HPoint apply(const MoebiusMap& m, const HPoint& z, const Precision& prec);
DPoint apply(const MoebiusMap& m, const DPoint& w, const Precision& prec);

// Raw Moebius action on C, no model bookkeeping.
Complex moebius(const MoebiusMap& m, const Complex& z);

// Half-plane <-> disk, w = (z - i)/(z + i) and its inverse.
DPoint cayley(const HPoint& z, const Precision& prec);
HPoint cayley_inv(const DPoint& w, const Precision& prec);

// Conjugate a half-plane matrix to its disk form and back.
MoebiusMap cayley_conjugate(const MoebiusMap& m);
MoebiusMap cayley_conjugate_inv(const MoebiusMap& m);

PolarPoint to_polar(const HPoint& z);
HPoint from_polar(const PolarPoint& p);

// The two real fixed points of a hyperbolic real matrix, ordered z1 < z2.
// A vanishing c entry puts one fixed point at infinity.
std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const MoebiusMap& m, const Precision& prec);

// The map U(z) = ((t - z2)/(t - z1)) * (z - z1)/(z - z2), normalized to unit
// determinant. Sends z1 -> 0, z2 -> inf, t -> 1; conjugates any hyperbolic
// matrix fixing {z1, z2} to diagonal form. Requires z1 < t < z2.
MoebiusMap flare_conjugator(const Real& z1, const Real& z2, const Real& t);

} // namespace maass

#endif
