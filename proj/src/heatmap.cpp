#include "maass/heatmap.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace maass {

using boost::multiprecision::abs;
using nlohmann::ordered_json;

namespace {

struct Sample {
    bool in_domain = false;
    bool defined = false;
    Real x{0}, y{0}, value{0};
};

void write_outputs(const std::vector<Sample>& samples, int grid, const std::string& prefix,
                   HeatmapSummary& out) {
    Real vmin, vmax;
    bool first = true;
    for (const Sample& s : samples) {
        if (!s.defined) continue;
        if (first || s.value < vmin) vmin = s.value;
        if (first || s.value > vmax) vmax = s.value;
        first = false;
    }
    if (first) throw ConfigError("run_heatmap: no grid point could be evaluated");
    out.vmin = vmin;
    out.vmax = vmax;

    // CSV: in-domain points only.
    std::ostringstream csv;
    csv << "x,y,value\n";
    long rows = 0;
    for (const Sample& s : samples) {
        if (!s.in_domain) continue;
        csv << s.x.str(17) << "," << s.y.str(17) << "," << s.value.str(17) << "\n";
        ++rows;
    }
    out.rows_written = rows;
    out.csv_path = prefix + ".csv";
    write_atomic(out.csv_path, csv.str());

    // 16-bit binary PGM, linear map [vmin, vmax] -> [0, 65535].
    Real range = vmax - vmin;
    bool flat = !(range > 0);
    std::string pgm;
    {
        std::ostringstream head;
        head << "P5\n" << grid << " " << grid << "\n65535\n";
        pgm = head.str();
    }
    pgm.reserve(pgm.size() + 2 * samples.size());
    for (const Sample& s : samples) {
        unsigned v = 0;
        if (s.defined && !flat) {
            Real t = (s.value - vmin) / range * 65535;
            long tv = t.convert_to<long>();
            v = static_cast<unsigned>(std::max(0L, std::min(65535L, tv)));
        }
        pgm.push_back(static_cast<char>((v >> 8) & 0xff));
        pgm.push_back(static_cast<char>(v & 0xff));
    }
    out.pgm_path = prefix + ".pgm";
    write_atomic(out.pgm_path, pgm);

    ordered_json meta;
    meta["grid"] = grid;
    meta["min"] = vmin.str(20);
    meta["max"] = vmax.str(20);
    meta["csv_rows"] = rows;
    out.meta_path = prefix + ".meta.json";
    write_atomic(out.meta_path, meta.dump(2) + "\n");
}

} // namespace

HeatmapSummary run_heatmap(const ResultRecord& record, int grid, const std::string& out_prefix) {
    if (!record.converged())
        throw ConfigError("run_heatmap: record did not converge; refusing to render");
    if (grid < 2) throw ConfigError("run_heatmap: grid must be at least 2");

    const int digits = record.digits();
    Precision prec(digits);
    ScopedPrecision scope(digits);

    SearchResult sr;
    sr.s_final = Real(record.doc.at("result").at("s_final").get<std::string>());
    sr.cusp_coeffs = record.cusp_coeffs();
    sr.flare_coeffs = record.flare_coeffs();

    const auto& cfg = record.doc.at("config");
    Real y0 = cfg.contains("y0") ? Real(cfg.at("y0").get<std::string>()) : Real("0.28");
    Real alpha0 = cfg.contains("alpha0") ? Real(cfg.at("alpha0").get<std::string>())
                                         : pi_value() / 2;
    AdmissibilityConfig adm{y0, alpha0};

    HeatmapSummary out;
    out.grid = grid;
    std::vector<Sample> samples(static_cast<size_t>(grid) * grid);

    if (record.group() == "hecke") {
        HeckeGroup g(record.group_parameter(), prec);
        MaassSolution f{CuspExpansion{sr.s_final, sr.cusp_coeffs, true},
                        FlareExpansion{sr.s_final, g.kappa(), sr.flare_coeffs, true}};
        Real y_top("1.25");
        for (int i = 0; i < grid; ++i) {     // top row first = max y
            Real y = y_top * (2 * (grid - i) - 1) / (2 * grid);
            for (int j = 0; j < grid; ++j) {
                Real x = (Real(2 * j + 1)) / (2 * grid);
                Sample& s = samples[static_cast<size_t>(i) * grid + j];
                s.x = x;
                s.y = y;
                HPoint z(x, y);
                s.in_domain = g.in_fundamental_domain(z);
                HPoint zeval = s.in_domain ? z : g.pullback(z).point;
                s.value = eval_solution(g, f, zeval, adm);
                s.defined = true;
            }
        }
        write_outputs(samples, grid, out_prefix, out);
        return out;
    }

    SchottkyCover g(record.group_parameter(), prec);
    MaassSolution f{std::nullopt, FlareExpansion{sr.s_final, g.kappa(), sr.flare_coeffs, true}};
    Real rim("0.995"); // stay clear of the boundary circle
    for (int i = 0; i < grid; ++i) {
        Real y = (Real(2 * (grid - i) - 1) / grid - 1); // [-1, 1], top row = max y
        for (int j = 0; j < grid; ++j) {
            Real x = (Real(2 * j + 1) / grid - 1);
            Sample& s = samples[static_cast<size_t>(i) * grid + j];
            s.x = x;
            s.y = y;
            Complex w{x, y};
            if (abs(w) > rim) continue; // outside the disk model
            DPoint p(w);
            s.in_domain = g.in_fundamental_domain(p);
            DPoint peval = s.in_domain ? p : g.pullback_cover(p).point;
            s.value = eval_solution(g, f, cayley_inv(peval, prec), adm);
            s.defined = true;
        }
    }
    write_outputs(samples, grid, out_prefix, out);
    return out;
}

} // namespace maass
