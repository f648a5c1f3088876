#include "maass/solver.hpp"

namespace maass {

using boost::multiprecision::abs;
using boost::multiprecision::ceil;
using boost::multiprecision::cos;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

SideKind classify(const HPoint& z, const HeckeGroup& g, const AdmissibilityConfig& cfg) {
    bool flare_ok = g.flare_coords(z).theta <= cfg.alpha0;
    bool cusp_ok = z.y >= cfg.y0;
    if (flare_ok) return SideKind::Flare; // flare preferred when both admit
    if (cusp_ok) return SideKind::Cusp;
    return SideKind::Rejected;
}

SideKind classify(const HPoint& z, const SchottkyCover& g, const AdmissibilityConfig& cfg) {
    return g.flare_coords(z).theta <= cfg.alpha0 ? SideKind::Flare : SideKind::Rejected;
}

std::vector<HPoint> gen_horocycle_points(const HeckeGroup& g, const Real& Y, int count) {
    (void)g;
    if (!(Y > 0)) throw ConfigError("gen_horocycle_points: need Y > 0");
    if (count < 1) throw ConfigError("gen_horocycle_points: need count >= 1");
    std::vector<HPoint> out;
    out.reserve(count);
    for (int j = 1; j <= count; ++j)
        out.emplace_back((Real(j) - Real(1) / 2) / (2 * count), Y);
    return out;
}

std::vector<PolarPoint> gen_ray_points(const Real& kappa, const Real& phi, int count) {
    if (!(kappa > 1)) throw ConfigError("gen_ray_points: kappa must exceed 1");
    if (!(phi > 0) || !(phi < pi_value()))
        throw ConfigError("gen_ray_points: angle must lie in (0, pi)");
    if (count < 1) throw ConfigError("gen_ray_points: need count >= 1");
    std::vector<PolarPoint> out;
    out.reserve(count);
    for (int j = 1; j <= count; ++j)
        out.emplace_back(pow(kappa, Real(j) / (2 * count)), phi);
    return out;
}

namespace {

// Distance from x to the nearest integer.
Real frac_dist(const Real& x) {
    using boost::multiprecision::floor;
    Real f = x - floor(x + Real(1) / 2);
    return abs(f);
}

bool same_point(const HPoint& a, const HPoint& b, const Real& tol) {
    return abs(a.x - b.x) < tol && abs(a.y - b.y) < tol;
}

} // namespace

std::vector<TestPoint> prepare_points(const HeckeGroup& g, const AdmissibilityConfig& adm,
                                      const HeckePointSet& set) {
    std::vector<HPoint> raw = gen_horocycle_points(g, set.horocycle_y, set.horocycle_count);
    if (set.ray_count > 0) {
        for (const PolarPoint& p : gen_ray_points(g.kappa(), set.ray_angle, set.ray_count))
            raw.push_back(g.from_flare_coords(p));
    }
    Real tol = g.precision().boundary_tol();
    std::vector<TestPoint> out;
    for (const HPoint& z : raw) {
        HPullback pb = g.pullback(z);
        if (pb.word_length == 0) {
            // Interior: usable only with two distinct admissible expansions.
            bool flare_ok = g.flare_coords(z).theta <= adm.alpha0;
            bool cusp_ok = z.y >= adm.y0;
            if (cusp_ok && flare_ok)
                out.push_back({z, z, SideKind::Cusp, SideKind::Flare, true, 0});
            continue;
        }
        SideKind s1 = classify(z, g, adm);
        SideKind s2 = classify(pb.point, g, adm);
        if (s1 == SideKind::Rejected || s2 == SideKind::Rejected) continue;
        if (s1 == s2 && same_point(z, pb.point, tol)) continue; // identically zero row
        out.push_back({z, pb.point, s1, s2, false, pb.word_length});
    }
    return out;
}

std::vector<TestPoint> prepare_points(const SchottkyCover& g, const AdmissibilityConfig& adm,
                                      const SchottkyPointSet& set) {
    const Precision& prec = g.precision();
    Real tol = prec.boundary_tol();
    Real logk = g.log_kappa();
    std::vector<TestPoint> out;
    for (const Real& phi : set.ray_angles) {
        for (const PolarPoint& p : gen_ray_points(g.kappa(), phi, set.count_per_angle)) {
            HPoint z = g.from_flare_coords(p);
            DPullback pb = g.pullback_cover(cayley(z, prec));
            if (pb.word_length == 0) continue; // interior: single expansion, no row
            HPoint zp = cayley_inv(pb.point, prec);
            PolarPoint fz = g.flare_coords(z);
            PolarPoint fp = g.flare_coords(zp);
            if (fz.theta > adm.alpha0 || fp.theta > adm.alpha0) continue;
            // Scaling by kappa and the fold are built into the expansion, so a
            // pair related only by those moves gives an identically zero row.
            Real uz = log(fz.r) / logk;
            Real up = log(fp.r) / logk;
            if (abs(fz.theta - fp.theta) < tol &&
                (frac_dist(uz - up) < tol || frac_dist(uz + up) < tol))
                continue;
            out.push_back({z, zp, SideKind::Flare, SideKind::Flare, false, pb.word_length});
        }
    }
    return out;
}

namespace {

struct SideCoords {
    SideKind kind;
    Real c1; // cusp: x      flare: log r / log kappa
    Real c2; // cusp: y      flare: theta
};

SideCoords side_coords(const HeckeGroup& g, const HPoint& z, SideKind kind) {
    if (kind == SideKind::Cusp) return {kind, z.x, z.y};
    PolarPoint f = g.flare_coords(z);
    return {kind, log(f.r) / g.log_kappa(), f.theta};
}

SideCoords side_coords(const SchottkyCover& g, const HPoint& z, SideKind kind) {
    PolarPoint f = g.flare_coords(z);
    return {kind, log(f.r) / g.log_kappa(), f.theta};
}

template <typename Group>
LinearSystem build_system_impl(const Group& g, const std::vector<TestPoint>& points,
                               const Real& s, const SolverConfig& cfg) {
    const Precision& prec = g.precision();
    const bool has_cusp = cfg.m_c >= 0;
    const int n_cusp = has_cusp ? cfg.m_c + 1 : 0;
    const int n_flare = cfg.m_f + 1;
    const int ncols = n_cusp + n_flare;
    const int m = static_cast<int>(points.size());

    if (m == 0) throw ConfigError("build_system: no usable test points (coverage)");
    if (m <= ncols - 1)
        throw ConfigError("build_system: underdetermined system (" + std::to_string(m) +
                          " rows for " + std::to_string(ncols - 1) + " unknowns)");
    int cusp_sides = 0, flare_sides = 0;
    for (const TestPoint& t : points) {
        cusp_sides += (t.side_z == SideKind::Cusp) + (t.side_pullback == SideKind::Cusp);
        flare_sides += (t.side_z == SideKind::Flare) + (t.side_pullback == SideKind::Flare);
    }
    if (has_cusp && cusp_sides == 0)
        throw ConfigError("build_system: the cuspidal expansion appears in no row (coverage)");
    if (flare_sides == 0)
        throw ConfigError("build_system: the flare expansion appears in no row (coverage)");

    std::vector<Real> col_scale(ncols);
    for (int n = 0; n < n_cusp; ++n)
        col_scale[n] = scale_factor(ExpansionKind::Cusp, n, s, g.kappa(), cfg.scale_alpha);
    for (int n = 0; n < n_flare; ++n)
        col_scale[n_cusp + n] =
            scale_factor(ExpansionKind::Flare, n, s, g.kappa(), cfg.scale_alpha);

    const int anchor = 0; // a_0 with a cusp present, else b_0
    Matrix A = Matrix::Zero(m, ncols - 1);
    Vector rhs = Vector::Zero(m);
    Real two_pi = 2 * pi_value();

    auto fill_side = [&](const SideCoords& sc, int row, const Real& sign) {
        if (sc.kind == SideKind::Cusp) {
            for (int n = 0; n < n_cusp; ++n) {
                Real v = cusp_basis(n, s, sc.c2, prec);
                if (n > 0) v *= cos(two_pi * n * sc.c1);
                v *= sign * col_scale[n];
                if (n == anchor)
                    rhs(row) -= v;
                else
                    A(row, n - 1) += v;
            }
        } else {
            std::vector<Real> basis = flare_basis_column(s, g.kappa(), sc.c2, n_flare - 1, prec);
            for (int n = 0; n < n_flare; ++n) {
                Real v = basis[n];
                if (n > 0) v *= cos(two_pi * n * sc.c1);
                int col = n_cusp + n;
                v *= sign * col_scale[col];
                if (col == anchor)
                    rhs(row) -= v;
                else
                    A(row, col - 1) += v;
            }
        }
    };

    for (int i = 0; i < m; ++i) {
        const TestPoint& t = points[i];
        fill_side(side_coords(g, t.z, t.side_z), i, Real(1));
        fill_side(side_coords(g, t.z_pullback, t.side_pullback), i, Real(-1));
    }

    // Equilibrate column norms on top of the envelope scaling; the combined
    // factor is undone when coefficients are reported.
    for (int jc = 0; jc + 1 < ncols; ++jc) {
        Real n = A.col(jc).norm();
        if (n > 0) {
            A.col(jc) /= n;
            col_scale[jc + 1] /= n;
        }
    }

    LinearSystem sys;
    sys.A = std::move(A);
    sys.rhs = std::move(rhs);
    sys.col_scale = std::move(col_scale);
    sys.n_cusp = n_cusp;
    sys.n_flare = n_flare;
    return sys;
}

} // namespace

LinearSystem build_system(const HeckeGroup& g, const std::vector<TestPoint>& points,
                          const Real& s, const SolverConfig& cfg) {
    if (cfg.m_c < 0) throw ConfigError("build_system: Hecke runs need a cuspidal truncation");
    return build_system_impl(g, points, s, cfg);
}

LinearSystem build_system(const SchottkyCover& g, const std::vector<TestPoint>& points,
                          const Real& s, const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.m_c = -1;
    return build_system_impl(g, points, s, c);
}

SolveOutput solve_ls(const LinearSystem& sys) {
    const int ncols = sys.n_cusp + sys.n_flare;
    Eigen::ColPivHouseholderQR<Matrix> qr(sys.A);
    if (qr.rank() < sys.A.cols())
        throw ConvergenceError("solve_ls: system is numerically rank-deficient");
    Vector x = qr.solve(sys.rhs);

    SolveOutput out;
    out.residual = (sys.A * x - sys.rhs).norm();
    const auto& R = qr.matrixR();
    Real dmax = abs(R(0, 0)), dmin = abs(R(0, 0));
    for (int j = 1; j < sys.A.cols(); ++j) {
        Real d = abs(R(j, j));
        if (d > dmax) dmax = d;
        if (d < dmin) dmin = d;
    }
    out.condition_estimate = dmin > 0 ? Real(dmax / dmin) : Real(0);

    std::vector<Real> full(ncols);
    full[0] = sys.col_scale[0]; // anchor coefficient, scale is 1
    for (int jc = 1; jc < ncols; ++jc) full[jc] = x(jc - 1) * sys.col_scale[jc];
    if (sys.n_cusp > 0) {
        out.cusp_coeffs.assign(full.begin(), full.begin() + sys.n_cusp);
        out.flare_coeffs.assign(full.begin() + sys.n_cusp, full.end());
    } else {
        out.flare_coeffs = std::move(full);
    }
    return out;
}

SolveOutput solve_at(const HeckeGroup& g, const std::vector<TestPoint>& points, const Real& s,
                     const SolverConfig& cfg) {
    return solve_ls(build_system(g, points, s, cfg));
}

SolveOutput solve_at(const SchottkyCover& g, const std::vector<TestPoint>& points, const Real& s,
                     const SolverConfig& cfg) {
    return solve_ls(build_system(g, points, s, cfg));
}

// ---------------------------------------------------------------------------
// Default parameters

HeckeRunParams default_hecke_params(const HeckeGroup& g) {
    using boost::multiprecision::atan;
    const int digits = g.precision().digits();
    Real eps = pow10(-(digits / 3 + 6));

    // Cutoff arc with h = 0.11 w, w = sqrt(1/4 - r^2): its apex height bounds
    // where a point can be admissible for both expansions at once. The
    // admissibility floor and horocycle heights sit just under the apex
    // (capped by 0.28 and 3/10 for wide flares, and by the circle top r).
    Real q("0.11");
    Real w = sqrt(Real(1) / 4 - g.r() * g.r());
    Real alpha0 = pi_value() / 2 - atan(q);
    Real apex = w * (sqrt(1 + q * q) - q);
    Real y0 = Real("0.28");
    if (y0 > apex * Real("0.88")) y0 = apex * Real("0.88");
    if (y0 > g.r() * Real("0.85")) y0 = g.r() * Real("0.85");
    AdmissibilityConfig adm{y0, alpha0};
    Real y_set1 = y0 + (apex - y0) / 2;
    Real y_set2 = y0 + (apex - y0) / 4;
    if (y_set1 > g.r() * Real("0.95")) y_set1 = g.r() * Real("0.95");
    if (y_set2 > g.r() * Real("0.925")) y_set2 = g.r() * Real("0.925");

    // Guess s near the middle of the admissible range for sizing only.
    Real s_size("0.8");
    int m_c = truncation_order(ExpansionKind::Cusp, eps, adm.y0, g.kappa(), s_size);
    int m_f = truncation_order(ExpansionKind::Flare, eps, alpha0, g.kappa(), s_size);
    int m_f_entry = flare_entry_truncation(eps, alpha0, g.kappa(), s_size);
    if (m_f_entry > m_f) m_f = m_f_entry;

    SolverConfig solver;
    solver.m_c = m_c;
    solver.m_f = m_f;
    solver.scale_alpha = 2 * alpha0; // equilibrates the flare column maxima

    HeckeRunParams params{adm, solver,
                          HeckePointSet{y_set1, 0, alpha0 * Real("0.97"), 0},
                          HeckePointSet{y_set2, 0, alpha0 * Real("0.99"), 0},
                          eps};
    return params;
}

SchottkyRunParams default_schottky_params(const SchottkyCover& g) {
    const int digits = g.precision().digits();
    Real eps = pow10(-(digits / 3 + 6));
    Real spine = g.spine_angle();
    Real alpha0 = spine + Real("0.23");
    Real cap = pi_value() - Real("0.02");
    if (alpha0 > cap) alpha0 = cap;
    AdmissibilityConfig adm{Real("0.28"), alpha0};

    Real s_size("0.75");
    int m_f = truncation_order(ExpansionKind::Flare, eps, alpha0, g.kappa(), s_size);
    int m_f_entry = flare_entry_truncation(eps, alpha0, g.kappa(), s_size);
    if (m_f_entry > m_f) m_f = m_f_entry;

    SolverConfig solver;
    solver.m_c = -1;
    solver.m_f = m_f;
    solver.scale_alpha = 2 * alpha0;

    SchottkyRunParams params{adm, solver,
                             SchottkyPointSet{{spine + Real("0.06"), spine + Real("0.19")}, 0},
                             SchottkyPointSet{{spine + Real("0.10"), spine + Real("0.15")}, 0},
                             eps};
    return params;
}

std::vector<TestPoint> gather_points(const HeckeGroup& g, const AdmissibilityConfig& adm,
                                     HeckePointSet set, int unknowns, const Real& row_factor) {
    int target = static_cast<int>(ceil(row_factor * unknowns)) + 2;
    set.horocycle_count = set.horocycle_count > 0 ? set.horocycle_count : target;
    set.ray_count = set.ray_count > 0 ? set.ray_count : target;
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::vector<TestPoint> pts = prepare_points(g, adm, set);
        if (static_cast<int>(pts.size()) >= target) return pts;
        set.horocycle_count *= 2;
        set.ray_count *= 2;
    }
    throw ConfigError("gather_points: could not reach the target row count; "
                      "admissibility thresholds leave too few usable points");
}

std::vector<TestPoint> gather_points(const SchottkyCover& g, const AdmissibilityConfig& adm,
                                     SchottkyPointSet set, int unknowns, const Real& row_factor) {
    int target = static_cast<int>(ceil(row_factor * unknowns)) + 2;
    int per_angle = target / std::max<size_t>(1, set.ray_angles.size()) + 2;
    set.count_per_angle = set.count_per_angle > 0 ? set.count_per_angle : per_angle;
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::vector<TestPoint> pts = prepare_points(g, adm, set);
        if (static_cast<int>(pts.size()) >= target) return pts;
        set.count_per_angle *= 2;
    }
    throw ConfigError("gather_points: could not reach the target row count; "
                      "ray angles yield too few nontrivial pullback pairs");
}

} // namespace maass
