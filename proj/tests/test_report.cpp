#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "affdecomp/report.hpp"
#include "doctest.h"

using namespace affdecomp;

namespace {

Curve cubic() {
    return Curve::polynomial_curve({{0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}},
                                   Interval(0.0, 1.0), 4.0);
}

ConfigEcho config() {
    ConfigEcho c;
    c.seed = 42;
    c.shrink_a = 0.015625;
    c.hgrid_m = 2;
    c.hgrid_points = 3;
    c.quad_tol = 1e-9;
    c.id_tol = 1e-6;
    return c;
}

}  // namespace

TEST_CASE("identical runs serialize byte-identically") {
    Curve c = cubic();
    auto run = [&] {
        auto reports = full_decomposition(c, 0, 4, 0.015625, HGridPolicy{2, 3});
        return decomposition_json(c, reports, config());
    };
    std::string first = run();
    std::string second = run();
    CHECK(first == second);
    CHECK(!first.empty());
    CHECK(first.back() == '\n');
}

TEST_CASE("json uses sorted keys and LF only") {
    Curve c = cubic();
    auto reports = full_decomposition(c, 2, 3, 0.015625, HGridPolicy{1, 2});
    std::string text = decomposition_json(c, reports, config());
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find("\"config\"") < text.find("\"curve\""));
    CHECK(text.find("\"curve\"") < text.find("\"scales\""));
}

TEST_CASE("csv and json agree on shared fields") {
    Curve c = cubic();
    auto reports = full_decomposition(c, 2, 4, 0.015625, HGridPolicy{1, 2});
    std::string csv = decomposition_csv(reports);
    // one row per scale plus the header
    size_t rows = 0;
    for (char ch : csv) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == reports.size() + 1);
    for (const auto& r : reports) {
        std::string row_prefix =
            std::to_string(r.k_d) + "," + std::to_string(r.count()) + ",";
        CHECK(csv.find(row_prefix) != std::string::npos);
    }
    std::string json = decomposition_json(c, reports, config());
    for (const auto& r : reports)
        CHECK(json.find("\"N_k\":" + std::to_string(r.count())) != std::string::npos);
}

TEST_CASE("knapp csv columns") {
    KnappScan scan;
    scan.points.push_back({0.25, 1.5, false});
    scan.points.push_back({0.125, 1.6, false});
    scan.slope = 0.01;
    scan.classification = "bounded";
    std::string csv = knapp_csv(RegionSpec{2, 4.0, 0.0}, 1.3, 1.4, scan);
    CHECK(csv.rfind("d,N,epsilon,p,q,delta,ratio,slope,classification\n", 0) == 0);
    CHECK(csv.find(",bounded\n") != std::string::npos);
    size_t rows = 0;
    for (char ch : csv) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 3);
}

TEST_CASE("region serialization carries the polygon") {
    RegionSpec region{2, 4.0, 0.0};
    RegionPolygon poly = region_polygon(region);
    std::string json = region_json(region, poly);
    CHECK(json.find("\"vertices\"") != std::string::npos);
    CHECK(json.find("0.095238095238095") != std::string::npos);  // 2/21
    std::string csv = region_csv(poly);
    CHECK(csv.rfind("inv_q_conj,inv_p_conj\n", 0) == 0);
}

TEST_CASE("floats render at 17 significant digits") {
    Curve c = cubic();
    std::vector<DecompositionReport> reports(1);
    reports[0].k_d = 0;
    reports[0].count_bound = 1.0 / 3.0;
    std::string json = decomposition_json(c, reports, config());
    CHECK(json.find("0.33333333333333331") != std::string::npos);
}
