#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "maass/heatmap.hpp"
#include "maass/records.hpp"
#include "testutil.hpp"

using namespace maass;
using boost::multiprecision::abs;
using testutil::close;

namespace {

ResultRecord synthetic_record(const char* s_final, std::vector<const char*> cusp,
                              std::vector<const char*> flare, bool hecke = true) {
    RunConfig cfg;
    cfg.group = hecke ? "hecke" : "schottky";
    if (hecke) cfg.r = "0.35";
    else cfg.theta_deg = "94";
    cfg.digits = 30;

    SearchResult r;
    ScopedPrecision scope(30);
    r.s_final = Real(s_final);
    r.delta_hausdorff = r.s_final;
    r.lambda0 = r.s_final * (1 - r.s_final);
    for (const char* c : cusp) r.cusp_coeffs.emplace_back(c);
    for (const char* c : flare) r.flare_coeffs.emplace_back(c);
    r.iterations = 3;
    r.final_spread = Real("1e-12");
    r.residuals = {Real("1e-20"), Real("2e-20")};
    r.condition_estimate = Real(100);

    nlohmann::ordered_json echo;
    // Synthetic records route every evaluation through the cusp expansion.
    echo["y0"] = "1e-6";
    echo["alpha0"] = "1e-6";
    return make_record(cfg, echo, r, 1.5);
}

} // namespace

TEST_CASE("result records round trip byte for byte") {
    ResultRecord rec = synthetic_record("0.767052417", {"1.0", "1.39"}, {"0.569", "-8.6e-5"});
    std::string text = rec.serialize();
    ResultRecord back = ResultRecord::parse(text);
    CHECK(back.serialize() == text);

    std::string twice = ResultRecord::parse(back.serialize()).serialize();
    CHECK(twice == text);
}

TEST_CASE("record invariants") {
    ResultRecord rec = synthetic_record("0.767052417", {"1.0"}, {"0.5"});
    ScopedPrecision scope(30);
    CHECK(rec.converged());
    CHECK(rec.group() == "hecke");
    CHECK(rec.digits() == 30);
    Real d = rec.delta();
    Real l = rec.lambda0();
    CHECK(close(l, d * (1 - d), pow10(-25)));
    CHECK(close(rec.group_parameter(), Real("0.35"), pow10(-25)));
}

TEST_CASE("atomic write") {
    const char* path = "test_atomic_write.json";
    write_atomic(path, "{\"a\": 1}\n");
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == "{\"a\": 1}\n");
    std::remove(path);
}

TEST_CASE("heatmap of a constant synthetic record is flat") {
    // s = 1 with a_0 = 1 is the constant eigenfunction with eigenvalue 0.
    ResultRecord rec = synthetic_record("1.0", {"1.0", "0", "0"}, {"0", "0"});
    HeatmapSummary hm = run_heatmap(rec, 12, "test_heatmap_flat");
    CHECK(hm.rows_written > 0);
    ScopedPrecision scope(30);
    CHECK(close(hm.vmin, Real(1), pow10(-20)));
    CHECK(close(hm.vmax, Real(1), pow10(-20)));

    // CSV row count equals the number of in-domain grid points.
    std::ifstream csv("test_heatmap_flat.csv");
    std::string line;
    long lines = 0;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == hm.rows_written + 1); // header

    // PGM header sanity.
    std::ifstream pgm("test_heatmap_flat.pgm", std::ios::binary);
    std::string head(15, '\0');
    pgm.read(head.data(), 15);
    CHECK(head.substr(0, 3) == "P5\n");

    std::remove("test_heatmap_flat.csv");
    std::remove("test_heatmap_flat.pgm");
    std::remove("test_heatmap_flat.meta.json");
}

TEST_CASE("heatmap refuses unconverged records") {
    ResultRecord rec = synthetic_record("1.0", {"1.0"}, {"0"});
    rec.doc["result"]["converged"] = false;
    CHECK_THROWS_AS(run_heatmap(rec, 8, "never_written"), ConfigError);
}
