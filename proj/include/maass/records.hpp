#ifndef MAASS_RECORDS_HPP
#define MAASS_RECORDS_HPP

#include <json.hpp>
#include <string>

#include "maass/search.hpp"

namespace maass {

// CLI-level run description; zeros mean "use the family default".
struct RunConfig {
    std::string group;      // "hecke" | "schottky"
    std::string r;          // Hecke parameter, decimal string
    std::string theta_deg;  // Schottky angle in degrees, decimal string
    int digits = 50;
    std::string s0;         // initial guess ("" = family default)
    std::string spread0 = "0.02";
    int points = 0;         // per-generator point count override
    std::string horocycle_y; // Hecke only
    std::string ray_angle;
    std::string y0;
    std::string alpha0;
    std::string h;          // Hecke flare-cutoff height, sets alpha0 when given
    int mc = 0;             // 0 = from eps
    int mf = 0;
    std::string eps;
    std::string method = "secant";
    std::string out = "result.json";
    int grid = 48;
};

// A solved run: the full effective configuration plus the results. All
// numeric payloads are stored as decimal strings so that
// serialize(parse(serialize(x))) == serialize(x) byte for byte.
struct ResultRecord {
    nlohmann::ordered_json doc;

    std::string serialize() const;
    static ResultRecord parse(const std::string& text);

    bool converged() const;
    std::string group() const;
    int digits() const;
    Real delta() const;
    Real lambda0() const;
    Real group_parameter() const; // r or theta in radians
    std::vector<Real> cusp_coeffs() const;
    std::vector<Real> flare_coeffs() const;
};

ResultRecord make_record(const RunConfig& cfg, const nlohmann::ordered_json& effective,
                         const SearchResult& result, double wall_seconds);

void write_atomic(const std::string& path, const std::string& contents);

} // namespace maass

#endif
