#ifndef MAASS_SOLVER_HPP
#define MAASS_SOLVER_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <vector>

#include "maass/expansions.hpp"
#include "maass/groups.hpp"

namespace maass {

using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Admissibility thresholds: a point may use the cuspidal expansion when
// Im(z) >= y0 and the flare expansion when theta(Uz) <= alpha0.
struct AdmissibilityConfig {
    Real y0;
    Real alpha0;

    AdmissibilityConfig(Real y0_, Real alpha0_) : y0(std::move(y0_)), alpha0(std::move(alpha0_)) {
        if (!(y0 > 0)) throw ConfigError("AdmissibilityConfig: y0 must be positive");
        if (!(alpha0 > 0) || !(alpha0 < pi_value()))
            throw ConfigError("AdmissibilityConfig: alpha0 must lie in (0, pi)");
    }
};

enum class SideKind { Cusp, Flare, Rejected };

// A usable test point: either exterior with its pullback and one expansion
// assigned per side, or interior with the two distinct admissible expansions.
struct TestPoint {
    HPoint z;
    HPoint z_pullback;
    SideKind side_z;
    SideKind side_pullback;
    bool interior = false;
    int word_length = 0;
};

// Expansion choice for one point per the selection rules: the sole admissible
// expansion wins; with a cusp and a flare both admissible, the flare is used;
// nothing admissible rejects the point.
SideKind classify(const HPoint& z, const HeckeGroup& g, const AdmissibilityConfig& cfg);
SideKind classify(const HPoint& z, const SchottkyCover& g, const AdmissibilityConfig& cfg);

// Half-horocycle x_j + iY, x_j = (j - 1/2) / (2 count).
std::vector<HPoint> gen_horocycle_points(const HeckeGroup& g, const Real& Y, int count);

// Ray at fixed angle phi, radii kappa^{j/(2 count)} in (1, sqrt(kappa)].
std::vector<PolarPoint> gen_ray_points(const Real& kappa, const Real& phi, int count);

struct HeckePointSet {
    Real horocycle_y;
    int horocycle_count = 0;
    Real ray_angle;
    int ray_count = 0;
};

struct SchottkyPointSet {
    std::vector<Real> ray_angles;
    int count_per_angle = 0;
};

// Filter generated points down to usable test points (both sides assigned,
// degenerate rows dropped).
std::vector<TestPoint> prepare_points(const HeckeGroup& g, const AdmissibilityConfig& adm,
                                      const HeckePointSet& set);
std::vector<TestPoint> prepare_points(const SchottkyCover& g, const AdmissibilityConfig& adm,
                                      const SchottkyPointSet& set);

struct LinearSystem {
    Matrix A;    // anchor column eliminated
    Vector rhs;  // minus the anchor column
    std::vector<Real> col_scale; // all columns, anchor included
    int n_cusp = 0;  // cusp unknowns (M_C + 1), 0 when no cusp exists
    int n_flare = 0; // flare unknowns (M_F + 1)
};

struct SolveOutput {
    std::vector<Real> cusp_coeffs;  // natural units, a_0 = 1 for Hecke
    std::vector<Real> flare_coeffs; // natural units, b_0 = 1 for Schottky
    Real residual{0};
    Real condition_estimate{0};
};

struct SolverConfig {
    int m_c = -1; // -1: no cuspidal expansion
    int m_f = 0;
    Real scale_alpha{0}; // alpha passed to the flare scale factor
    Real row_factor{"2.5"};
};

// One row per test point: exterior rows equate the two sides' expansions,
// interior rows equate the cusp and flare expansion at the same point.
// Columns are scaled; the anchor coefficient (a_0 for Hecke, b_0 for
// Schottky) is pinned to 1 by moving its column to the right-hand side.
LinearSystem build_system(const HeckeGroup& g, const std::vector<TestPoint>& points,
                          const Real& s, const SolverConfig& cfg);
LinearSystem build_system(const SchottkyCover& g, const std::vector<TestPoint>& points,
                          const Real& s, const SolverConfig& cfg);

SolveOutput solve_ls(const LinearSystem& system);

// Rows drawn fresh each call; equivalent to solve_ls(build_system(...)).
SolveOutput solve_at(const HeckeGroup& g, const std::vector<TestPoint>& points, const Real& s,
                     const SolverConfig& cfg);
SolveOutput solve_at(const SchottkyCover& g, const std::vector<TestPoint>& points, const Real& s,
                     const SolverConfig& cfg);

// ---------------------------------------------------------------------------
// Default run parameters, derived from the group geometry.

struct HeckeRunParams {
    AdmissibilityConfig adm;
    SolverConfig solver;
    HeckePointSet set1, set2;
    Real eps;
};

struct SchottkyRunParams {
    AdmissibilityConfig adm;
    SolverConfig solver;
    SchottkyPointSet set1, set2;
    Real eps;
};

HeckeRunParams default_hecke_params(const HeckeGroup& g);
SchottkyRunParams default_schottky_params(const SchottkyCover& g);

// Grow point counts until at least row_factor * unknowns usable points exist.
std::vector<TestPoint> gather_points(const HeckeGroup& g, const AdmissibilityConfig& adm,
                                     HeckePointSet set, int unknowns, const Real& row_factor);
std::vector<TestPoint> gather_points(const SchottkyCover& g, const AdmissibilityConfig& adm,
                                     SchottkyPointSet set, int unknowns, const Real& row_factor);

} // namespace maass

#endif
