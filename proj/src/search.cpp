#include "maass/search.hpp"

#include <algorithm>

namespace maass {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

std::pair<Real, Real> hausdorff_from_s(const Real& s) {
    if (!(s > Real(1) / 2) || !(s <= 1))
        throw DomainError("hausdorff_from_s: no L2 base eigenfunction for s outside (1/2, 1]");
    return {s, s * (1 - s)};
}

namespace {

std::vector<Real> tracked(const SolveOutput& o1, const SolveOutput& o2, bool cusp, int ell) {
    const std::vector<Real>& v1 = cusp ? o1.cusp_coeffs : o1.flare_coeffs;
    const std::vector<Real>& v2 = cusp ? o2.cusp_coeffs : o2.flare_coeffs;
    if (static_cast<int>(v1.size()) <= ell)
        throw ConfigError("coeff_diff: truncation shorter than the tracked index range");
    std::vector<Real> c(ell);
    for (int j = 1; j <= ell; ++j) c[j - 1] = v1[j] - v2[j];
    return c;
}

} // namespace

std::vector<Real> coeff_diff(const HeckeGroup& g, const Real& s,
                             const std::vector<TestPoint>& pts1,
                             const std::vector<TestPoint>& pts2, int ell,
                             const SolverConfig& cfg) {
    return tracked(solve_at(g, pts1, s, cfg), solve_at(g, pts2, s, cfg), true, ell);
}

std::vector<Real> coeff_diff(const SchottkyCover& g, const Real& s,
                             const std::vector<TestPoint>& pts1,
                             const std::vector<TestPoint>& pts2, int ell,
                             const SolverConfig& cfg) {
    return tracked(solve_at(g, pts1, s, cfg), solve_at(g, pts2, s, cfg), false, ell);
}

SecantStep secant_update(const Real& s, const Real& d, const std::vector<Real>& c_at_s,
                         const std::vector<Real>& c_at_sd, const Real& floor_tol) {
    if (c_at_s.size() != c_at_sd.size() || c_at_s.empty())
        throw ConfigError("secant_update: mismatched difference vectors");
    bool any = false;
    Real tmin, tmax;
    for (size_t j = 0; j < c_at_s.size(); ++j) {
        Real denom = c_at_s[j] - c_at_sd[j];
        Real scale = abs(c_at_s[j]) + abs(c_at_sd[j]);
        if (abs(denom) <= scale * floor_tol || scale == 0) continue; // secant line is flat
        Real tj = (c_at_s[j] * (s + d) - c_at_sd[j] * s) / denom;
        if (!any) {
            tmin = tmax = tj;
            any = true;
        } else {
            if (tj < tmin) tmin = tj;
            if (tj > tmax) tmax = tj;
        }
    }
    if (!any) throw ConvergenceError("secant_update: all tracked differences degenerate");
    SecantStep step;
    step.s_mid = (tmax + tmin) / 2;
    step.d_new = 5 * (tmax - tmin);
    step.converged = (step.d_new > d / 2) || (step.d_new < floor_tol);
    return step;
}

SecantOutcome secant_iterate(const CoeffFn& diff, const Real& s0, const Real& d0,
                             int max_iters, const Precision& prec) {
    const Real lo = Real(1) / 2 + Real("1e-6");
    const Real hi = Real(1) - Real("1e-9");
    Real floor_tol = pow10(-(prec.digits() - 10));
    Real s = s0, d = d0;
    if (!(s > lo) || !(s < hi)) throw ConfigError("secant_iterate: s0 outside (1/2, 1)");
    if (!(d > 0)) throw ConfigError("secant_iterate: delta0 must be positive");
    if (s + d >= hi) d = (hi - s) / 2;

    SecantOutcome out;
    int consecutive_clamped = 0;
    std::vector<Real> cs = diff(s);
    for (int iter = 1; iter <= max_iters; ++iter) {
        std::vector<Real> csd = diff(s + d);
        SecantStep step = secant_update(s, d, cs, csd, floor_tol);
        out.iterations = iter;
        out.trajectory.push_back(step.s_mid);

        bool clamped = false;
        if (step.s_mid <= lo) {
            step.s_mid = lo;
            clamped = true;
        } else if (step.s_mid >= hi) {
            step.s_mid = hi;
            clamped = true;
        }
        consecutive_clamped = clamped ? consecutive_clamped + 1 : 0;
        if (consecutive_clamped >= 2)
            throw ConvergenceError("secant_iterate: iterates escaped (1/2, 1) twice in a row");

        if (step.converged && !clamped) {
            out.s_final = step.s_mid;
            out.final_spread = step.d_new;
            return out;
        }
        s = step.s_mid;
        d = step.d_new;
        if (d < floor_tol) d = floor_tol;
        if (s + d >= hi) d = (hi - s) / 2;
        cs = diff(s);
    }
    throw ConvergenceError("secant_iterate: no convergence within " +
                           std::to_string(max_iters) + " iterations");
}

namespace {

template <typename Group, typename Params>
SearchResult run_secant(const Group& g, const SearchConfig& cfg, const Params& params) {
    const int unknowns =
        (params.solver.m_c >= 0 ? params.solver.m_c + 1 : 0) + params.solver.m_f + 1;
    std::vector<TestPoint> pts1 =
        gather_points(g, params.adm, params.set1, unknowns, params.solver.row_factor);
    std::vector<TestPoint> pts2 =
        gather_points(g, params.adm, params.set2, unknowns, params.solver.row_factor);

    CoeffFn diff = [&](const Real& s) {
        return coeff_diff(g, s, pts1, pts2, cfg.ell, params.solver);
    };
    SecantOutcome oc = secant_iterate(diff, cfg.s0, cfg.delta0, cfg.max_iters, g.precision());

    SolveOutput o1 = solve_at(g, pts1, oc.s_final, params.solver);
    SolveOutput o2 = solve_at(g, pts2, oc.s_final, params.solver);

    SearchResult r;
    r.s_final = oc.s_final;
    std::tie(r.delta_hausdorff, r.lambda0) = hausdorff_from_s(oc.s_final);
    r.cusp_coeffs = o1.cusp_coeffs;
    r.flare_coeffs = o1.flare_coeffs;
    r.iterations = oc.iterations;
    r.final_spread = oc.final_spread;
    r.residuals = {o1.residual, o2.residual};
    r.condition_estimate = o1.condition_estimate;
    return r;
}

template <typename Group, typename Params>
SearchResult run_grid(const Group& g, const SearchConfig& cfg, const Params& params) {
    const int unknowns =
        (params.solver.m_c >= 0 ? params.solver.m_c + 1 : 0) + params.solver.m_f + 1;
    std::vector<TestPoint> pts1 =
        gather_points(g, params.adm, params.set1, unknowns, params.solver.row_factor);
    std::vector<TestPoint> pts2 =
        gather_points(g, params.adm, params.set2, unknowns, params.solver.row_factor);

    ObjectiveFn objective = [&](const Real& s) {
        SolveOutput o1 = solve_at(g, pts1, s, params.solver);
        SolveOutput o2 = solve_at(g, pts2, s, params.solver);
        Real acc = 0;
        for (size_t i = 0; i < o1.cusp_coeffs.size(); ++i) {
            Real dfc = o1.cusp_coeffs[i] - o2.cusp_coeffs[i];
            acc += dfc * dfc;
        }
        for (size_t i = 0; i < o1.flare_coeffs.size(); ++i) {
            Real dff = o1.flare_coeffs[i] - o2.flare_coeffs[i];
            acc += dff * dff;
        }
        return sqrt(acc);
    };

    int levels = 0;
    Real s_best = grid_minimize(objective, cfg.s0, cfg.delta0, cfg.grid_points,
                                cfg.max_iters, &levels);

    SolveOutput o1 = solve_at(g, pts1, s_best, params.solver);
    SolveOutput o2 = solve_at(g, pts2, s_best, params.solver);
    SearchResult r;
    r.s_final = s_best;
    std::tie(r.delta_hausdorff, r.lambda0) = hausdorff_from_s(s_best);
    r.cusp_coeffs = o1.cusp_coeffs;
    r.flare_coeffs = o1.flare_coeffs;
    r.iterations = levels;
    r.final_spread = 0;
    r.residuals = {o1.residual, o2.residual};
    r.condition_estimate = o1.condition_estimate;
    return r;
}

} // namespace

SearchResult secant_search(const HeckeGroup& g, const SearchConfig& cfg) {
    return run_secant(g, cfg, default_hecke_params(g));
}
SearchResult secant_search(const HeckeGroup& g, const SearchConfig& cfg,
                           const HeckeRunParams& params) {
    return run_secant(g, cfg, params);
}
SearchResult secant_search(const SchottkyCover& g, const SearchConfig& cfg) {
    return run_secant(g, cfg, default_schottky_params(g));
}
SearchResult secant_search(const SchottkyCover& g, const SearchConfig& cfg,
                           const SchottkyRunParams& params) {
    return run_secant(g, cfg, params);
}

Real grid_minimize(const ObjectiveFn& objective, const Real& s0, const Real& width0,
                   int grid_points, int max_levels, int* levels_out) {
    const Real lo = Real(1) / 2 + Real("1e-6");
    const Real hi = Real(1) - Real("1e-9");
    if (grid_points < 1) throw ConfigError("grid_minimize: need at least one grid point");
    Real center = s0, width = width0;
    Real best_s = s0;
    Real prev_min;
    bool have_prev = false;
    int widenings = 0;
    int level = 0;
    for (; level < max_levels; ++level) {
        std::vector<Real> ss;
        if (grid_points == 1) {
            ss.push_back(center);
        } else {
            for (int i = 0; i < grid_points; ++i)
                ss.push_back(center - width + (2 * width * i) / (grid_points - 1));
        }
        int best_i = -1;
        Real level_min;
        for (int i = 0; i < static_cast<int>(ss.size()); ++i) {
            if (ss[i] <= lo || ss[i] >= hi) continue;
            Real v = objective(ss[i]);
            if (best_i < 0 || v < level_min) {
                level_min = v;
                best_i = i;
            }
        }
        if (best_i < 0) throw ConfigError("grid_minimize: grid fell outside (1/2, 1)");
        if (grid_points == 1) {
            if (levels_out) *levels_out = 1;
            return ss[0];
        }
        if (best_i == 0 || best_i == grid_points - 1) {
            if (++widenings > 8)
                throw ConvergenceError("grid_minimize: minimum keeps escaping the grid");
            width *= 2;
            center = ss[best_i];
            continue;
        }
        if (have_prev && level_min >= prev_min) {
            if (levels_out) *levels_out = level + 1;
            return best_s; // stopped improving
        }
        have_prev = true;
        prev_min = level_min;
        best_s = ss[best_i];
        center = ss[best_i];
        width = 2 * width / (grid_points - 1); // zoom to one grid spacing
    }
    if (levels_out) *levels_out = level;
    return best_s;
}

SearchResult grid_search(const HeckeGroup& g, const SearchConfig& cfg) {
    return run_grid(g, cfg, default_hecke_params(g));
}
SearchResult grid_search(const SchottkyCover& g, const SearchConfig& cfg) {
    return run_grid(g, cfg, default_schottky_params(g));
}

// ---------------------------------------------------------------------------
// Post-hoc checks

MaassSolution to_solution(const HeckeGroup& g, const SearchResult& r) {
    MaassSolution f{CuspExpansion{r.s_final, r.cusp_coeffs, true},
                    FlareExpansion{r.s_final, g.kappa(), r.flare_coeffs, true}};
    return f;
}

MaassSolution to_solution(const SchottkyCover& g, const SearchResult& r) {
    return {std::nullopt, FlareExpansion{r.s_final, g.kappa(), r.flare_coeffs, true}};
}

Real eval_solution(const HeckeGroup& g, const MaassSolution& f, const HPoint& z,
                   const AdmissibilityConfig& adm) {
    PolarPoint fc = g.flare_coords(z);
    if (!f.cusp || fc.theta <= adm.alpha0) return eval_flare(f.flare, fc, g.precision());
    if (z.y >= adm.y0) return eval_cusp(*f.cusp, z, g.precision());
    // Inadmissible for both: use the side with the larger margin.
    Real p = pi_value();
    if (fc.theta < p - Real(1) / 4) return eval_flare(f.flare, fc, g.precision());
    return eval_cusp(*f.cusp, z, g.precision());
}

Real eval_solution(const SchottkyCover& g, const MaassSolution& f, const HPoint& z,
                   const AdmissibilityConfig& adm) {
    (void)adm;
    return eval_flare(f.flare, g.flare_coords(z), g.precision());
}

namespace {

template <typename Group>
Real gap_over_pairs(const Group& g, const MaassSolution& f, const AdmissibilityConfig& adm,
                    const std::vector<TestPoint>& pairs, int npoints) {
    if (static_cast<int>(pairs.size()) < npoints)
        throw ConfigError("invariance_gap: not enough fresh usable pairs");
    Real worst = 0;
    for (int i = 0; i < npoints; ++i) {
        const TestPoint& t = pairs[i];
        Real v1 = eval_solution(g, f, t.z, adm);
        Real v2 = eval_solution(g, f, t.z_pullback, adm);
        Real denom = abs(v1) > 1 ? abs(v1) : Real(1);
        Real gap = abs(v1 - v2) / denom;
        if (gap > worst) worst = gap;
    }
    return worst;
}

} // namespace

Real invariance_gap(const HeckeGroup& g, const MaassSolution& f,
                    const AdmissibilityConfig& adm, int npoints) {
    // Fresh points: a horocycle between the two solve horocycles plus a ray
    // offset from the solve rays; none coincide with solve points.
    HeckePointSet fresh{Real("0.315"), 4 * npoints, adm.alpha0 * Real("0.95"), 2 * npoints};
    std::vector<TestPoint> pairs = prepare_points(g, adm, fresh);
    std::vector<TestPoint> exterior;
    for (const TestPoint& t : pairs)
        if (!t.interior) exterior.push_back(t);
    return gap_over_pairs(g, f, adm, exterior, npoints);
}

Real invariance_gap(const SchottkyCover& g, const MaassSolution& f,
                    const AdmissibilityConfig& adm, int npoints) {
    SchottkyPointSet fresh{{g.spine_angle() + Real("0.125"), g.spine_angle() + Real("0.21")},
                           2 * npoints};
    std::vector<TestPoint> pairs = prepare_points(g, adm, fresh);
    return gap_over_pairs(g, f, adm, pairs, npoints);
}

namespace {

template <typename Group>
Real fd_residual(const Group& g, const MaassSolution& f, const std::vector<HPoint>& pts,
                 const Real& h, const AdmissibilityConfig& wide) {
    // Delta = -y^2 (f_xx + f_yy), five-point second-order stencil.
    Real lambda = f.flare.s * (1 - f.flare.s);
    Real num = 0, den = 0;
    for (const HPoint& z : pts) {
        Real f0 = eval_solution(g, f, z, wide);
        Real fxp = eval_solution(g, f, HPoint(z.x + h, z.y), wide);
        Real fxm = eval_solution(g, f, HPoint(z.x - h, z.y), wide);
        Real fyp = eval_solution(g, f, HPoint(z.x, z.y + h), wide);
        Real fym = eval_solution(g, f, HPoint(z.x, z.y - h), wide);
        Real lap = -z.y * z.y * (fxp + fxm + fyp + fym - 4 * f0) / (h * h);
        Real target = lambda * f0;
        num += (lap - target) * (lap - target);
        den += target * target;
    }
    return sqrt(num) / sqrt(den);
}

} // namespace

Real laplacian_residual(const HeckeGroup& g, const MaassSolution& f, int npoints,
                        const Real& step) {
    // Interior points high in the cusp, where the cuspidal series is short.
    std::vector<HPoint> pts;
    for (int i = 0; i < npoints; ++i) {
        Real t = Real(i + 1) / (npoints + 1);
        pts.emplace_back(Real("0.1") + Real("0.8") * t, Real("0.9") + Real("0.5") * t);
    }
    return fd_residual(g, f, pts, step, AdmissibilityConfig{Real("0.28"), Real(1)});
}

Real laplacian_residual(const SchottkyCover& g, const MaassSolution& f, int npoints,
                        const Real& step) {
    // Interior points along the middle of the funnel.
    std::vector<HPoint> pts;
    using boost::multiprecision::pow;
    for (int i = 0; i < npoints; ++i) {
        Real t = Real(i + 1) / (npoints + 1);
        PolarPoint p(pow(g.kappa(), Real(1) / 4 + t / 2), Real("0.5") + t / 2);
        pts.push_back(g.from_flare_coords(p));
    }
    return fd_residual(g, f, pts, step,
                       AdmissibilityConfig{Real("0.28"), pi_value() * Real("0.9")});
}

} // namespace maass
