#ifndef MAASS_GROUPS_HPP
#define MAASS_GROUPS_HPP

#include <array>
#include <optional>
#include <variant>

#include "maass/geometry.hpp"

namespace maass {

struct PullbackResult {
    int word_length = 0; // generator applications used
};

struct HPullback : PullbackResult {
    HPoint point;
    HPullback(HPoint p, int w) : point(std::move(p)) { word_length = w; }
};

struct DPullback : PullbackResult {
    DPoint point;
    DPullback(DPoint p, int w) : point(std::move(p)) { word_length = w; }
};

// Infinite-covolume Hecke group <z -> z+1, z -> -r^2/z>, 0 < r < 1/2.
// One cusp at infinity (width 1) and one flare cut off by the axis of
// A = T S between the fixed points z1 < z2.
class HeckeGroup {
public:
    HeckeGroup(const Real& r, const Precision& prec);

    const Real& r() const { return r_; }
    const Precision& precision() const { return prec_; }
    const MoebiusMap& gen_T() const { return T_; }
    const MoebiusMap& gen_S() const { return S_; }
    const MoebiusMap& flare_matrix() const { return A_; }
    const Real& z1() const { return z1_; }
    const Real& z2() const { return z2_; }
    const MoebiusMap& conjugator() const { return U_; }
    const Real& kappa() const { return kappa_; }
    Real log_kappa() const;

    // Representative in the closed fundamental domain
    // {0 <= x <= 1, |z| >= r, |z-1| >= r}.
    HPullback pullback(const HPoint& z) const;

    bool in_fundamental_domain(const HPoint& z) const;

    // Acute angle the arc C(h) through z1, z2 (center 1/2 - ih) makes with
    // the real axis: alpha = pi/2 - arctan(h / sqrt(1/4 - r^2)).
    Real flare_cutoff_angle(const Real& h) const;

    // Polar coordinates of U(z) in the flare model.
    PolarPoint flare_coords(const HPoint& z) const;
    HPoint from_flare_coords(const PolarPoint& p) const;

private:
    Real r_;
    Precision prec_;
    MoebiusMap T_, S_, A_, U_;
    Real z1_, z2_, kappa_;
};

// Doubled 6-fold cover of the symmetric Schottky group with arc angle theta:
// generated in the disk by the rotation by 2pi/3 and the side pairing that
// glues circle 0 to circle 1. theta < 2pi/3 keeps the circles disjoint.
class SchottkyCover {
public:
    SchottkyCover(const Real& theta, const Precision& prec);

    const Real& theta() const { return theta_; }
    const Precision& precision() const { return prec_; }

    const MoebiusMap& disk_rotation() const { return rot_; }   // D1 D2
    const MoebiusMap& disk_pairing() const { return d2r_; }    // D2 R
    const MoebiusMap& half_plane_rotation() const { return h_rot_; }
    const MoebiusMap& half_plane_pairing() const { return h_d2r_; }
    const MoebiusMap& flare_matrix() const { return h_flare_; } // D1 R, half-plane form
    const Real& z1() const { return z1_; }
    const Real& z2() const { return z2_; }
    const Real& normalization_point() const { return t_; }
    const MoebiusMap& conjugator() const { return U_; }
    const Real& kappa() const { return kappa_; }
    Real log_kappa() const;

    // Flare angle of the image of the disk center; the wedge sides exit the
    // fundamental domain only beyond this angle.
    const Real& spine_angle() const { return spine_; }

    // Center of Schottky circle k (k = 0, 1, 2) and the common radius.
    Complex circle_center(int k) const;
    const Real& circle_radius() const { return circ_rad_; }

    // Reflection through circle k.
    Complex reflect_circle(int k, const Complex& w) const;

    // Representative exterior to all three circles, by repeated reflection.
    DPullback pullback(const DPoint& w) const;

    // Representative in the cover's fundamental domain: the wedge
    // 0 <= arg w < 2pi/3 minus circles 0 and 1. Rotations count toward the
    // word length like reflections do.
    DPullback pullback_cover(const DPoint& w) const;

    bool in_fundamental_domain(const DPoint& w) const; // exterior of 3 circles
    bool in_fundamental_domain_cover(const DPoint& w) const;

    PolarPoint flare_coords(const HPoint& z) const;
    HPoint from_flare_coords(const PolarPoint& p) const;
    PolarPoint flare_coords_disk(const DPoint& w) const;
    DPoint disk_from_flare_coords(const PolarPoint& p) const;

private:
    Real theta_;
    Precision prec_;
    MoebiusMap rot_, d2r_, h_rot_, h_d2r_, h_flare_, U_;
    Real z1_, z2_, t_, kappa_, spine_, circ_rad_;
};

using GroupModel = std::variant<HeckeGroup, SchottkyCover>;

} // namespace maass

#endif
