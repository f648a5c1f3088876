#include "maass/records.hpp"

#include <cstdio>
#include <fstream>

namespace maass {

using nlohmann::ordered_json;

namespace {
std::string real_str(const Real& x, int digits) { return x.str(digits); }
}

std::string ResultRecord::serialize() const { return doc.dump(2) + "\n"; }

ResultRecord ResultRecord::parse(const std::string& text) {
    ResultRecord r;
    r.doc = ordered_json::parse(text);
    return r;
}

bool ResultRecord::converged() const { return doc.at("result").at("converged").get<bool>(); }
std::string ResultRecord::group() const { return doc.at("config").at("group").get<std::string>(); }
int ResultRecord::digits() const { return doc.at("config").at("digits").get<int>(); }

Real ResultRecord::delta() const {
    return Real(doc.at("result").at("delta").get<std::string>());
}
Real ResultRecord::lambda0() const {
    return Real(doc.at("result").at("lambda0").get<std::string>());
}

Real ResultRecord::group_parameter() const {
    const auto& cfg = doc.at("config");
    if (group() == "hecke") return Real(cfg.at("r").get<std::string>());
    Real deg(cfg.at("theta_deg").get<std::string>());
    return deg * pi_value() / 180;
}

static std::vector<Real> parse_reals(const ordered_json& arr) {
    std::vector<Real> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.emplace_back(v.get<std::string>());
    return out;
}

std::vector<Real> ResultRecord::cusp_coeffs() const {
    return parse_reals(doc.at("result").at("cusp_coeffs"));
}
std::vector<Real> ResultRecord::flare_coeffs() const {
    return parse_reals(doc.at("result").at("flare_coeffs"));
}

ResultRecord make_record(const RunConfig& cfg, const ordered_json& effective,
                         const SearchResult& result, double wall_seconds) {
    const int d = cfg.digits;
    ordered_json res;
    res["converged"] = true;
    res["s_final"] = real_str(result.s_final, d);
    res["delta"] = real_str(result.delta_hausdorff, d);
    res["lambda0"] = real_str(result.lambda0, d);
    ordered_json cusp = ordered_json::array();
    for (const Real& a : result.cusp_coeffs) cusp.push_back(real_str(a, d));
    ordered_json flare = ordered_json::array();
    for (const Real& b : result.flare_coeffs) flare.push_back(real_str(b, d));
    res["cusp_coeffs"] = std::move(cusp);
    res["flare_coeffs"] = std::move(flare);
    res["iterations"] = result.iterations;
    res["final_spread"] = real_str(result.final_spread, 20);
    res["residuals"] =
        ordered_json::array({real_str(result.residuals.first, 20),
                             real_str(result.residuals.second, 20)});
    res["condition_estimate"] = real_str(result.condition_estimate, 8);
    res["wall_seconds"] = wall_seconds;

    ordered_json config;
    config["group"] = cfg.group;
    if (cfg.group == "hecke") config["r"] = cfg.r;
    else config["theta_deg"] = cfg.theta_deg;
    config["digits"] = cfg.digits;
    config["method"] = cfg.method;
    for (auto& [k, v] : effective.items()) config[k] = v;

    ResultRecord rec;
    rec.doc["artifact"] = {{"name", "maass"}, {"version", "0.1.0"}};
    rec.doc["config"] = std::move(config);
    rec.doc["result"] = std::move(res);
    return rec;
}

void write_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("write_atomic: cannot open " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("write_atomic: rename failed for " + path);
}

} // namespace maass
