// Command-line front end: solve for base eigenvalues and Maass form
// coefficients of infinite-covolume Hecke and symmetric Schottky groups,
// render eigenfunction heat maps, and check results against reference tables.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "maass/heatmap.hpp"
#include "maass/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitRegression = 4;

void add_run_flags(CLI::App* cmd, maass::RunConfig& cfg) {
    cmd->add_option("--group", cfg.group, "Group family: hecke or schottky")->required();
    cmd->add_option("--r", cfg.r, "Hecke parameter r in (0, 1/2)");
    cmd->add_option("--theta-deg", cfg.theta_deg, "Schottky arc angle in degrees, (0, 120)");
    cmd->add_option("--digits", cfg.digits, "Working precision in decimal digits");
    cmd->add_option("--s0", cfg.s0, "Initial spectral-parameter guess in (1/2, 1)");
    cmd->add_option("--spread0", cfg.spread0, "Initial secant spread / grid half-width");
    cmd->add_option("--points", cfg.points, "Test points per generator (0 = auto)");
    cmd->add_option("--horocycle-y", cfg.horocycle_y, "Horocycle height (Hecke)");
    cmd->add_option("--ray-angle", cfg.ray_angle, "Ray angle in radians");
    cmd->add_option("--y0", cfg.y0, "Cusp admissibility floor");
    cmd->add_option("--alpha0", cfg.alpha0, "Flare admissibility ceiling (radians)");
    cmd->add_option("--cutoff-h", cfg.h, "Flare cutoff height; sets alpha0 for Hecke runs");
    cmd->add_option("--mc", cfg.mc, "Cuspidal truncation order (0 = from eps)");
    cmd->add_option("--mf", cfg.mf, "Flare truncation order (0 = from eps)");
    cmd->add_option("--eps", cfg.eps, "Truncation tail target");
    cmd->add_option("--method", cfg.method, "Search method: secant or grid");
    cmd->add_option("--out", cfg.out, "Output record path");
}

int do_solve(const maass::RunConfig& cfg) {
    maass::ResultRecord rec = maass::run_solve(cfg);
    maass::write_atomic(cfg.out, rec.serialize());
    std::cout << "delta   = " << rec.delta().str(15) << "\n"
              << "lambda0 = " << rec.lambda0().str(15) << "\n"
              << "record  : " << cfg.out << "\n";
    return kExitOk;
}

int do_info(const maass::RunConfig& cfg) {
    // Echo the effective configuration without running the search.
    maass::Precision prec(cfg.digits);
    maass::ScopedPrecision scope(cfg.digits);
    nlohmann::ordered_json info;
    info["group"] = cfg.group;
    info["digits"] = cfg.digits;
    info["method"] = cfg.method;
    if (cfg.group == "hecke") {
        if (cfg.r.empty()) throw maass::ConfigError("info: Hecke runs need --r");
        maass::HeckeGroup g{maass::Real(cfg.r), prec};
        maass::HeckeRunParams p = maass::default_hecke_params(g);
        info["r"] = cfg.r;
        info["kappa"] = g.kappa().str(20);
        info["z1"] = g.z1().str(20);
        info["z2"] = g.z2().str(20);
        info["y0"] = p.adm.y0.str(20);
        info["alpha0"] = p.adm.alpha0.str(20);
        info["m_c"] = p.solver.m_c;
        info["m_f"] = p.solver.m_f;
        info["eps"] = p.eps.str(8);
    } else if (cfg.group == "schottky") {
        if (cfg.theta_deg.empty()) throw maass::ConfigError("info: Schottky runs need --theta-deg");
        maass::Real theta = maass::Real(cfg.theta_deg) * maass::pi_value() / 180;
        maass::SchottkyCover g{theta, prec};
        maass::SchottkyRunParams p = maass::default_schottky_params(g);
        info["theta_deg"] = cfg.theta_deg;
        info["kappa"] = g.kappa().str(20);
        info["spine_angle"] = g.spine_angle().str(20);
        info["alpha0"] = p.adm.alpha0.str(20);
        info["m_f"] = p.solver.m_f;
        info["eps"] = p.eps.str(8);
    } else {
        throw maass::ConfigError("info: group must be 'hecke' or 'schottky'");
    }
    std::cout << info.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maass forms and limit-set Hausdorff dimensions for "
                 "infinite-covolume Fuchsian groups"};
    app.require_subcommand(1);

    maass::RunConfig cfg;
    CLI::App* solve = app.add_subcommand("solve", "Search for the base eigenvalue");
    add_run_flags(solve, cfg);

    maass::RunConfig info_cfg;
    CLI::App* info = app.add_subcommand("info", "Print the effective configuration");
    add_run_flags(info, info_cfg);

    CLI::App* heatmap = app.add_subcommand("heatmap", "Render a fundamental-domain heat map");
    std::string record_path, heat_out = "heatmap";
    int grid = 48;
    heatmap->add_option("--record", record_path, "Converged result record")->required();
    heatmap->add_option("--grid", grid, "Grid resolution per axis");
    heatmap->add_option("--out", heat_out, "Output prefix (.csv/.pgm/.meta.json)");

    CLI::App* verify = app.add_subcommand("verify", "Run the reference-table regression");
    std::string table = "all", report_path;
    bool full_sweep = false;
    verify->add_option("--table", table, "hecke, schottky, or all");
    verify->add_flag("--full", full_sweep, "Run every tabulated Schottky angle");
    verify->add_option("--out", report_path, "Write the machine-readable report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return do_solve(cfg);
        if (info->parsed()) return do_info(info_cfg);
        if (heatmap->parsed()) {
            std::ifstream in(record_path);
            if (!in) throw maass::ConfigError("heatmap: cannot read " + record_path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            maass::HeatmapSummary s =
                maass::run_heatmap(maass::ResultRecord::parse(text), grid, heat_out);
            std::cout << "wrote " << s.csv_path << " (" << s.rows_written << " rows), "
                      << s.pgm_path << ", " << s.meta_path << "\n"
                      << "value range [" << s.vmin.str(10) << ", " << s.vmax.str(10) << "]\n";
            return kExitOk;
        }
        if (verify->parsed()) {
            maass::RegressionReport rep = maass::run_regression(table, full_sweep, std::cout);
            if (!report_path.empty())
                maass::write_atomic(report_path, rep.details.dump(2) + "\n");
            std::cout << (rep.pass ? "verify: all cases passed\n"
                                   : "verify: some cases FAILED\n");
            return rep.pass ? kExitOk : kExitRegression;
        }
    } catch (const maass::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const maass::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const maass::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const maass::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
    return kExitConfig;
}
