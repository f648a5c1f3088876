#ifndef MAASS_SEARCH_HPP
#define MAASS_SEARCH_HPP

#include <functional>
#include <optional>
#include <utility>

#include "maass/solver.hpp"

namespace maass {

struct SearchConfig {
    Real s0;
    Real delta0{"0.02"};
    int ell = 4;       // tracked coefficient indices 1..ell
    int max_iters = 40;
    int grid_points = 9; // grid search only
};

struct SearchResult {
    Real s_final;
    Real delta_hausdorff; // = s_final
    Real lambda0;         // = s (1 - s)
    std::vector<Real> cusp_coeffs;
    std::vector<Real> flare_coeffs;
    int iterations = 0;
    Real final_spread{0};
    std::pair<Real, Real> residuals;
    Real condition_estimate{0};
};

// delta = s, lambda0 = s(1-s); s must lie in (1/2, 1].
std::pair<Real, Real> hausdorff_from_s(const Real& s);

// Differences of the tracked coefficients between the two point sets,
// c_j(s) = x1(s)[i_j] - x2(s)[i_j]. Tracked indices are the first ell
// non-anchor coefficients (cusp for Hecke, flare for Schottky).
std::vector<Real> coeff_diff(const HeckeGroup& g, const Real& s,
                             const std::vector<TestPoint>& pts1,
                             const std::vector<TestPoint>& pts2, int ell,
                             const SolverConfig& cfg);
std::vector<Real> coeff_diff(const SchottkyCover& g, const Real& s,
                             const std::vector<TestPoint>& pts1,
                             const std::vector<TestPoint>& pts2, int ell,
                             const SolverConfig& cfg);

struct SecantStep {
    Real s_mid;
    Real d_new;
    bool converged = false;
};

// One secant update: roots t_j of each tracked difference, midpoint of their
// range, spread 5 (t_max - t_min). Converged when the new spread would not
// improve on the old one (d_new > d/2) or the roots have collapsed below
// floor_tol. Indices with a vanishing denominator are skipped; if all are
// skipped the step is degenerate.
SecantStep secant_update(const Real& s, const Real& d, const std::vector<Real>& c_at_s,
                         const std::vector<Real>& c_at_sd, const Real& floor_tol);

using CoeffFn = std::function<std::vector<Real>(const Real&)>;

struct SecantOutcome {
    Real s_final;
    int iterations = 0;
    Real final_spread{0};
    std::vector<Real> trajectory;
};

// Drives secant_update from (s0, d0) until convergence; guesses are clamped
// to (1/2 + 1e-6, 1 - 1e-9) and two consecutive clamped steps abort.
SecantOutcome secant_iterate(const CoeffFn& diff, const Real& s0, const Real& d0,
                             int max_iters, const Precision& prec);

SearchResult secant_search(const HeckeGroup& g, const SearchConfig& cfg);
SearchResult secant_search(const HeckeGroup& g, const SearchConfig& cfg,
                           const HeckeRunParams& params);
SearchResult secant_search(const SchottkyCover& g, const SearchConfig& cfg);
SearchResult secant_search(const SchottkyCover& g, const SearchConfig& cfg,
                           const SchottkyRunParams& params);

using ObjectiveFn = std::function<Real(const Real&)>;

// Zooming grid minimization of ||x1(s) - x2(s)||_2; stops when the level
// minimum stops decreasing. An argmin on the grid boundary widens the grid
// (bounded retries).
Real grid_minimize(const ObjectiveFn& objective, const Real& s0, const Real& width0,
                   int grid_points, int max_levels, int* levels_out);

SearchResult grid_search(const HeckeGroup& g, const SearchConfig& cfg);
SearchResult grid_search(const SchottkyCover& g, const SearchConfig& cfg);

// ---------------------------------------------------------------------------
// Post-hoc verification of a converged solution.

struct MaassSolution {
    std::optional<CuspExpansion> cusp;
    FlareExpansion flare;
};

MaassSolution to_solution(const HeckeGroup& g, const SearchResult& r);
MaassSolution to_solution(const SchottkyCover& g, const SearchResult& r);

// Evaluate through the admissibility rules; outside the admissible cones the
// expansion with the larger margin is used.
Real eval_solution(const HeckeGroup& g, const MaassSolution& f, const HPoint& z,
                   const AdmissibilityConfig& adm);
Real eval_solution(const SchottkyCover& g, const MaassSolution& f, const HPoint& z,
                   const AdmissibilityConfig& adm);

// Max over fresh test-point pairs of |f(z) - f(pullback z)| / max(1, |f(z)|).
Real invariance_gap(const HeckeGroup& g, const MaassSolution& f,
                    const AdmissibilityConfig& adm, int npoints);
Real invariance_gap(const SchottkyCover& g, const MaassSolution& f,
                    const AdmissibilityConfig& adm, int npoints);

// Relative residual || Delta f - lambda f || / || lambda f || of the
// five-point finite-difference hyperbolic Laplacian at interior points.
Real laplacian_residual(const HeckeGroup& g, const MaassSolution& f, int npoints,
                        const Real& step);
Real laplacian_residual(const SchottkyCover& g, const MaassSolution& f, int npoints,
                        const Real& step);

} // namespace maass

#endif
