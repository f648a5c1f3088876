#ifndef MAASS_TABLES_HPP
#define MAASS_TABLES_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "maass/records.hpp"

namespace maass {

// Reference values for regression: base Hausdorff dimensions and leading
// Fourier coefficients, with the per-case search start used to reproduce them.
struct HeckeRow {
    const char* r;
    const char* delta;
    std::array<const char*, 5> a; // a_0 .. a_4, cuspidal, a_0 = 1
    std::array<const char*, 5> b; // b_0 .. b_4, flare
    const char* s0;
};

struct SchottkyRow {
    int theta_deg;
    const char* delta;
    const char* b1; // flare coefficients normalized to b_0 = 1
    const char* s0;
    bool in_default_set;
};

const std::vector<HeckeRow>& hecke_reference();
const std::vector<SchottkyRow>& schottky_reference();

// Full solve pipeline for one configuration.
ResultRecord run_solve(const RunConfig& cfg);

struct RegressionReport {
    bool pass = true;
    nlohmann::ordered_json details;
};

// Runs the reference cases for `table` ("hecke", "schottky", or "all") and
// compares delta and leading coefficients. full_sweep additionally covers
// every tabulated Schottky angle.
RegressionReport run_regression(const std::string& table, bool full_sweep, std::ostream& log);

} // namespace maass

#endif
