#include "maass/groups.hpp"

namespace maass {

using boost::multiprecision::abs;
using boost::multiprecision::atan;
using boost::multiprecision::cos;
using boost::multiprecision::floor;
using boost::multiprecision::log;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;
using boost::multiprecision::tan;

namespace {
constexpr int kPullbackCap = 10000;

void check_diagonalizes(const MoebiusMap& U, const MoebiusMap& A, const Real& tol,
                        const char* who) {
    MoebiusMap D = U * A * U.inverse();
    if (abs(D.b()) > tol || abs(D.c()) > tol)
        throw DomainError(std::string(who) + ": conjugator failed to diagonalize the flare matrix");
}
} // namespace

// ---------------------------------------------------------------------------
// Hecke

HeckeGroup::HeckeGroup(const Real& r, const Precision& prec)
    : r_(r), prec_(prec),
      T_(MoebiusMap::translation(Real(1))),
      S_(Complex(Real(0)), Complex(-r), Complex(1 / r), Complex(Real(0))),
      A_(T_ * S_),
      U_(MoebiusMap::identity()),
      z1_(0), z2_(0), kappa_(0) {
    if (!(r > 0) || !(r < Real(1) / 2))
        throw DomainError("HeckeGroup: r must lie in (0, 1/2)");
    // Fixed points of A = T S: (1 -+ sqrt(1 - 4 r^2)) / 2.
    auto [p1, p2] = fixed_points(A_, prec_);
    z1_ = p1.value;
    z2_ = p2.value;
    U_ = flare_conjugator(z1_, z2_, r_);
    // kappa = U(1 - r) = (z2 / r)^2; cross-check the trace identity
    // sqrt(kappa) + 1/sqrt(kappa) = 1/r.
    kappa_ = moebius(U_, Complex(1 - r_)).re;
    Real tol = prec_.boundary_tol();
    Real sk = sqrt(kappa_);
    if (abs(sk + 1 / sk - 1 / r_) > tol)
        throw DomainError("HeckeGroup: trace identity violated at construction");
    if (abs(kappa_ - (z2_ / r_) * (z2_ / r_)) > tol)
        throw DomainError("HeckeGroup: kappa mismatch at construction");
    if (abs(moebius(U_, Complex(z1_)).re) > tol || abs(moebius(U_, Complex(r_)).re - 1) > tol)
        throw DomainError("HeckeGroup: conjugator normalization failed");
    check_diagonalizes(U_, A_, tol, "HeckeGroup");
}

Real HeckeGroup::log_kappa() const { return log(kappa_); }

bool HeckeGroup::in_fundamental_domain(const HPoint& z) const {
    Real tol = prec_.boundary_tol();
    if (z.x < -tol || z.x > 1 + tol) return false;
    Real n0 = z.x * z.x + z.y * z.y;
    if (n0 < (r_ - tol) * (r_ - tol)) return false;
    Real n1 = (z.x - 1) * (z.x - 1) + z.y * z.y;
    return n1 >= (r_ - tol) * (r_ - tol);
}

HPullback HeckeGroup::pullback(const HPoint& z) const {
    if (in_fundamental_domain(z)) return {z, 0};
    Real x = z.x, y = z.y;
    int moves = 0;
    Real r2 = r_ * r_;
    for (int it = 0; it < kPullbackCap; ++it) {
        // Translate Re into [-1/2, 1/2].
        Real shift = floor(x + Real(1) / 2);
        if (shift != 0) {
            x -= shift;
            moves += static_cast<int>(abs(shift));
        }
        Real n = x * x + y * y;
        if (n >= r2) {
            // Land in F_r: shift by +1 exactly when Re < 0.
            if (x < 0) {
                x += 1;
                ++moves;
            }
            return {HPoint(x, y), moves};
        }
        // z -> -r^2 / z, strictly increases the imaginary part.
        Real nx = -r2 * x / n;
        Real ny = r2 * y / n;
        x = nx;
        y = ny;
        ++moves;
    }
    throw ConvergenceError("HeckeGroup::pullback: move cap exceeded "
                           "(parameter out of range or precision exhausted)");
}

Real HeckeGroup::flare_cutoff_angle(const Real& h) const {
    if (!(h > 0)) throw DomainError("flare_cutoff_angle: need h > 0");
    return pi_value() / 2 - atan(h / sqrt(Real(1) / 4 - r_ * r_));
}

PolarPoint HeckeGroup::flare_coords(const HPoint& z) const {
    Complex w = moebius(U_, z.to_complex());
    return PolarPoint(abs(w), arg(w));
}

HPoint HeckeGroup::from_flare_coords(const PolarPoint& p) const {
    Complex w{p.r * cos(p.theta), p.r * sin(p.theta)};
    Complex z = moebius(U_.inverse(), w);
    return HPoint(z.re, z.im);
}

// ---------------------------------------------------------------------------
// Schottky cover

SchottkyCover::SchottkyCover(const Real& theta, const Precision& prec)
    : theta_(theta), prec_(prec),
      rot_(MoebiusMap::identity()), d2r_(MoebiusMap::identity()),
      h_rot_(MoebiusMap::identity()), h_d2r_(MoebiusMap::identity()),
      h_flare_(MoebiusMap::identity()), U_(MoebiusMap::identity()),
      z1_(0), z2_(0), t_(0), kappa_(0), spine_(0), circ_rad_(0) {
    Real p = pi_value();
    if (!(theta > 0) || !(theta < 2 * p / 3))
        throw DomainError("SchottkyCover: need 0 < theta < 2 pi / 3 (disjoint circles)");

    Real half = theta_ / 2;
    circ_rad_ = tan(half);
    Real csc = 1 / sin(half);
    Real cot = cos(half) / sin(half);

    // Disk generators: rotation by 2 pi / 3 and the conjugation-reflection
    // composite D2 R (circle R has center sec(theta/2), radius tan(theta/2)).
    Real c3 = cos(p / 3), s3 = sin(p / 3);
    rot_ = MoebiusMap({c3, s3}, Complex(Real(0)), Complex(Real(0)), {c3, -s3});
    d2r_ = MoebiusMap({Real(0), csc}, {Real(0), -cot}, {Real(0), cot}, {Real(0), -csc});

    Real tol = prec_.boundary_tol();
    h_rot_ = cayley_conjugate_inv(rot_);
    h_d2r_ = cayley_conjugate_inv(d2r_);
    h_flare_ = cayley_conjugate_inv(rot_ * d2r_); // D1 R = (D1 D2)(D2 R)
    if (!h_rot_.is_real(tol) || !h_d2r_.is_real(tol) || !h_flare_.is_real(tol))
        throw DomainError("SchottkyCover: half-plane generators failed to be real");

    auto [p1, p2] = fixed_points(h_flare_, prec_);
    z1_ = p1.value;
    z2_ = p2.value;

    // Endpoints of R on the unit circle are e^{+- i theta/2}; their half-plane
    // images are -+ cot(theta/4). The left one normalizes U.
    Real quarter = theta_ / 4;
    Real e_left = -cos(quarter) / sin(quarter);
    Real e_right = -e_left;
    t_ = e_left < e_right ? e_left : e_right;
    U_ = flare_conjugator(z1_, z2_, t_);

    // kappa = |U(endpoint of the rotated circle)|, validated against
    // sqrt(kappa) + 1/sqrt(kappa) = |trace of the flare matrix|.
    Real ep = -cos(p / 3 - quarter) / sin(p / 3 - quarter);
    kappa_ = abs(moebius(U_, Complex(ep)).re);
    if (!(kappa_ > 1)) throw DomainError("SchottkyCover: kappa must exceed 1");
    Real sk = sqrt(kappa_);
    Real tr = abs(h_flare_.trace());
    if (abs(sk + 1 / sk - tr) > tol * 100)
        throw DomainError("SchottkyCover: kappa disagrees with the trace identity");
    check_diagonalizes(U_, h_flare_, tol, "SchottkyCover");

    Complex spine_pt = moebius(U_, Complex{Real(0), Real(1)}); // image of the disk center
    spine_ = arg(spine_pt);
}

Real SchottkyCover::log_kappa() const { return log(kappa_); }

Complex SchottkyCover::circle_center(int k) const {
    Real p = pi_value();
    Real ang = 2 * p * k / 3;
    Real sec = 1 / cos(theta_ / 2);
    return {sec * cos(ang), sec * sin(ang)};
}

Complex SchottkyCover::reflect_circle(int k, const Complex& w) const {
    Complex c = circle_center(k);
    Complex d = (w - c).conj();
    return c + Complex(circ_rad_ * circ_rad_) / d;
}

bool SchottkyCover::in_fundamental_domain(const DPoint& w) const {
    Real tol = prec_.boundary_tol();
    Real rr = (circ_rad_ - tol) * (circ_rad_ - tol);
    for (int k = 0; k < 3; ++k) {
        if (norm_sq(w.w - circle_center(k)) < rr) return false;
    }
    return true;
}

bool SchottkyCover::in_fundamental_domain_cover(const DPoint& w) const {
    Real tol = prec_.boundary_tol();
    Real a = arg(w.w);
    Real p = pi_value();
    if (a < -tol || a >= 2 * p / 3 + tol) return false;
    Real rr = (circ_rad_ - tol) * (circ_rad_ - tol);
    for (int k = 0; k < 2; ++k) {
        if (norm_sq(w.w - circle_center(k)) < rr) return false;
    }
    return true;
}

DPullback SchottkyCover::pullback(const DPoint& w) const {
    Complex cur = w.w;
    int moves = 0;
    Real rr = circ_rad_ * circ_rad_;
    for (int it = 0; it < kPullbackCap; ++it) {
        bool moved = false;
        for (int k = 0; k < 3; ++k) {
            if (norm_sq(cur - circle_center(k)) < rr) {
                cur = reflect_circle(k, cur);
                ++moves;
                moved = true;
                break;
            }
        }
        if (!moved) return {DPoint(cur), moves};
    }
    throw ConvergenceError("SchottkyCover::pullback: reflection cap exceeded");
}

DPullback SchottkyCover::pullback_cover(const DPoint& w) const {
    Complex cur = w.w;
    int moves = 0;
    Real p = pi_value();
    Real two_thirds = 2 * p / 3;
    Real c3 = cos(two_thirds), s3 = sin(two_thirds);
    Complex rot_fwd{c3, s3};
    Real rr = circ_rad_ * circ_rad_;
    for (int it = 0; it < kPullbackCap; ++it) {
        Real a = arg(cur);
        while (a < 0) {
            cur = cur * rot_fwd;
            a += two_thirds;
            ++moves;
        }
        while (a >= two_thirds) {
            cur = cur / rot_fwd;
            a -= two_thirds;
            ++moves;
        }
        bool moved = false;
        for (int k = 0; k < 2; ++k) {
            if (norm_sq(cur - circle_center(k)) < rr) {
                cur = reflect_circle(k, cur);
                ++moves;
                moved = true;
                break;
            }
        }
        if (!moved) return {DPoint(cur), moves};
    }
    throw ConvergenceError("SchottkyCover::pullback_cover: move cap exceeded");
}

PolarPoint SchottkyCover::flare_coords(const HPoint& z) const {
    Complex w = moebius(U_, z.to_complex());
    return PolarPoint(abs(w), arg(w));
}

HPoint SchottkyCover::from_flare_coords(const PolarPoint& p) const {
    Complex w{p.r * cos(p.theta), p.r * sin(p.theta)};
    Complex z = moebius(U_.inverse(), w);
    return HPoint(z.re, z.im);
}

PolarPoint SchottkyCover::flare_coords_disk(const DPoint& w) const {
    return flare_coords(cayley_inv(w, prec_));
}

DPoint SchottkyCover::disk_from_flare_coords(const PolarPoint& p) const {
    return cayley(from_flare_coords(p), prec_);
}

} // namespace maass
