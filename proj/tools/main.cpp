// Command-line front end: decompose | verify-geom | identity | knapp | region.
// Exit codes: 0 all asserted bounds pass, 2 completed with flagged
// verification failures, 1 hard error (bad input, budget exhaustion).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affdecomp/decomposition.hpp"
#include "affdecomp/geometry_check.hpp"
#include "affdecomp/report.hpp"
#include "affdecomp/restriction.hpp"
#include "affdecomp/sylvester.hpp"

using namespace affdecomp;

namespace {

struct RunConfig {
    std::string curve_path;
    int k_min = 0;
    int k_max = 0;
    bool k_min_set = false;
    bool k_max_set = false;
    double shrink_a = 0.015625;  // 2^-6
    int hgrid_m = 3;
    int hgrid_points = 5;
    double quad_tol = 1e-9;
    double id_tol = 1e-6;
    uint64_t seed = 12345;
    std::string json_path;
    std::string csv_path;
    double epsilon = 0.0;
    double p = 1.25;
    double q = 0.0;
    int dim = 2;
    double smoothness = 0.0;
    std::vector<double> deltas;
    int samples = 2000;
    int grid_density = 50;
};

ConfigEcho echo_of(const RunConfig& cfg) {
    return ConfigEcho{cfg.seed,    cfg.shrink_a, cfg.hgrid_m,
                      cfg.hgrid_points, cfg.quad_tol, cfg.id_tol};
}

void emit(const RunConfig& cfg, const std::string& json_text,
          const std::string& csv_text) {
    if (!cfg.json_path.empty()) write_text_file(cfg.json_path, json_text);
    if (!cfg.csv_path.empty() && !csv_text.empty())
        write_text_file(cfg.csv_path, csv_text);
    if (cfg.json_path.empty() && cfg.csv_path.empty()) std::cout << json_text;
}

std::pair<int, int> scale_range(const RunConfig& cfg, const Curve& curve) {
    int start = decomposition_start_scale(curve);
    int k_min = cfg.k_min_set ? cfg.k_min : start;
    int k_max = cfg.k_max_set ? cfg.k_max : k_min + 10;
    return {k_min, k_max};
}

int run_decompose(const RunConfig& cfg) {
    Curve curve = load_curve_file(cfg.curve_path);
    auto [k_min, k_max] = scale_range(cfg, curve);
    HGridPolicy policy{cfg.hgrid_m, cfg.hgrid_points};
    auto reports = full_decomposition(curve, k_min, k_max, cfg.shrink_a, policy);

    bool bounds_ok = true, flagged = false;
    for (const auto& r : reports) {
        bounds_ok &= r.count() <= r.count_bound + 0.5;
        bounds_ok &= r.total_length <= r.length_bound + 1e-9;
        bounds_ok &= r.uncovered_measure <= 1e-9 * curve.domain().length() +
                                                1e-4 * curve.domain().length();
        flagged |= !r.flagged.empty();
    }
    emit(cfg, decomposition_json(curve, reports, echo_of(cfg)),
         decomposition_csv(reports));
    std::cerr << "decompose: " << reports.size() << " scales, bounds "
              << (bounds_ok ? "ok" : "VIOLATED") << (flagged ? ", flagged cells" : "")
              << "\n";
    if (!bounds_ok || flagged) return 2;
    return 0;
}

int run_verify_geom(const RunConfig& cfg) {
    Curve curve = load_curve_file(cfg.curve_path);
    auto [k_min, k_max] = scale_range(cfg, curve);
    HGridPolicy policy{cfg.hgrid_m, cfg.hgrid_points};
    auto reports = full_decomposition(curve, k_min, k_max, cfg.shrink_a, policy);

    std::vector<CellVerification> cells;
    bool all_pass = true;
    for (const auto& report : reports) {
        for (const auto& cell : report.cells) {
            if (!cell.verified) {
                all_pass = false;
                continue;
            }
            CellVerification v;
            v.cell = cell;
            v.geometric = check_geometric_inequality(curve, cell, cfg.samples, cfg.seed);
            all_pass &= v.geometric.pass;
            if (curve.dim() <= 4) {
                auto id = check_jacobian_identity(curve, cell,
                                                  std::max(8, cfg.samples / 20),
                                                  cfg.id_tol, cfg.seed);
                v.identity_max_rel_err = id.max_rel_err;
                v.identity_samples = static_cast<int>(id.residuals.size());
                v.identity_failures = id.failures;
                all_pass &= id.failures == 0;
            }
            if (v.geometric.pass)
                v.injectivity = certify_injectivity(curve, cell, v.geometric,
                                                    cfg.grid_density, cfg.seed);
            all_pass &= v.injectivity.collisions == 0;
            cells.push_back(std::move(v));
        }
    }
    emit(cfg, verification_json(curve, cells, echo_of(cfg)), verification_csv(cells));
    std::cerr << "verify-geom: " << cells.size() << " cells, "
              << (all_pass ? "all pass" : "FAILURES") << "\n";
    return all_pass ? 0 : 2;
}

int run_identity(const RunConfig& cfg) {
    Curve curve = load_curve_file(cfg.curve_path);
    IdentitySuiteReport report;

    CounterRng rng(cfg.seed, 0x5);
    for (int n = 3; n <= 5; ++n)
        for (int rep = 0; rep < 200; ++rep) {
            auto m = random_rational_matrix(rng, n);
            ++report.sylvester_total;
            if (!check_sylvester(m, n)) ++report.sylvester_failures;
        }

    // Dendrinos-Wright residuals on random tuples over a nondegenerate window
    auto [k_min, k_max] = scale_range(cfg, curve);
    auto reports = full_decomposition(curve, k_min, std::min(k_max, k_min + 2),
                                      cfg.shrink_a, HGridPolicy{1, 2});
    CounterRng trng(cfg.seed, 0x7);
    for (const auto& rep : reports) {
        for (const auto& cell : rep.cells) {
            if (!cell.verified) continue;
            int l = std::min(curve.dim(), 3);
            std::vector<int> rows;
            for (int i = 0; i < l; ++i) rows.push_back(i);
            for (int s = 0; s < 5; ++s) {
                std::vector<double> tuple;
                for (int i = 0; i < l; ++i)
                    tuple.push_back(trng.uniform(cell.interval.lo, cell.interval.hi));
                std::sort(tuple.begin(), tuple.end());
                bool distinct = true;
                for (size_t i = 1; i < tuple.size(); ++i)
                    distinct &= tuple[i] - tuple[i - 1] >
                                1e-6 * cell.interval.length();
                if (!distinct) continue;
                report.dw_residuals.push_back(
                    check_dw_lemma(curve, rows, tuple, cfg.quad_tol));
            }
            if (curve.dim() <= 4) {
                auto id = check_jacobian_identity(curve, cell, 20, cfg.id_tol, cfg.seed);
                report.jacobian_samples += static_cast<int>(id.residuals.size());
                report.jacobian_failures += id.failures;
                report.jacobian_max_rel_err =
                    std::max(report.jacobian_max_rel_err, id.max_rel_err);
            }
            break;  // one cell per scale keeps the suite quick
        }
    }

    bool pass = report.sylvester_failures == 0 && report.jacobian_failures == 0;
    for (const auto& r : report.dw_residuals)
        pass &= r.rel_err <= std::max(cfg.id_tol, 4.0 * r.quadrature_estimate);
    emit(cfg, identity_json(curve, report, echo_of(cfg)), "");
    std::cerr << "identity: sylvester " << report.sylvester_total << " cases, "
              << (pass ? "all pass" : "FAILURES") << "\n";
    return pass ? 0 : 2;
}

int run_knapp(const RunConfig& cfg) {
    Curve curve = load_curve_file(cfg.curve_path);
    RegionSpec region{curve.dim(), curve.smoothness(), cfg.epsilon};
    double q = cfg.q;
    if (q <= 0.0) {
        // default to the scaling line q = 2p'/(d^2+d)
        ExponentPair pr(cfg.p, 1.0, curve.dim());
        double dd = static_cast<double>(curve.dim()) * curve.dim() + curve.dim();
        q = 2.0 * pr.p_conj() / dd;
    }
    std::vector<double> deltas = cfg.deltas;
    if (deltas.empty())
        for (int e = 2; e <= 6; ++e) deltas.push_back(std::ldexp(1.0, -e));
    KnappScan scan = knapp_scan(curve, cfg.p, q, deltas, cfg.quad_tol);
    emit(cfg, knapp_json(region, cfg.p, q, scan), knapp_csv(region, cfg.p, q, scan));
    std::cerr << "knapp: slope " << scan.slope << " (" << scan.classification << ")\n";
    return scan.partial ? 2 : 0;
}

int run_region(const RunConfig& cfg) {
    RegionSpec region;
    if (!cfg.curve_path.empty()) {
        Curve curve = load_curve_file(cfg.curve_path);
        region = RegionSpec{curve.dim(), curve.smoothness(), cfg.epsilon};
    } else {
        if (!(cfg.smoothness > cfg.dim))
            throw std::invalid_argument("region needs --curve or --dim/--smoothness");
        region = RegionSpec{cfg.dim, cfg.smoothness, cfg.epsilon};
    }
    RegionPolygon poly = region_polygon(region);
    emit(cfg, region_json(region, poly), region_csv(poly));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic torsion decompositions and restriction probes for curves"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* cmd, bool needs_curve) {
        auto* opt = cmd->add_option("--curve", cfg.curve_path, "curve spec JSON path");
        if (needs_curve) opt->required();
        cmd->add_option("--k-min", cfg.k_min, "smallest torsion scale")
            ->each([&cfg](const std::string&) { cfg.k_min_set = true; });
        cmd->add_option("--k-max", cfg.k_max, "largest torsion scale")
            ->each([&cfg](const std::string&) { cfg.k_max_set = true; });
        cmd->add_option("--shrink-A", cfg.shrink_a, "interval shrinking constant A");
        cmd->add_option("--hgrid-m", cfg.hgrid_m, "max offspring multiplicity");
        cmd->add_option("--hgrid-points", cfg.hgrid_points, "offspring grid points");
        cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
        cmd->add_option("--id-tol", cfg.id_tol, "identity residual tolerance");
        cmd->add_option("--seed", cfg.seed, "RNG seed");
        cmd->add_option("--json", cfg.json_path, "JSON report path");
        cmd->add_option("--csv", cfg.csv_path, "CSV report path");
    };

    auto* decompose = app.add_subcommand("decompose", "interval decomposition");
    add_common(decompose, true);

    auto* verify = app.add_subcommand("verify-geom",
                                      "geometric inequality and injectivity checks");
    add_common(verify, true);
    verify->add_option("--samples", cfg.samples, "tuples per cell");
    verify->add_option("--grid-density", cfg.grid_density, "collision grid per axis");

    auto* identity = app.add_subcommand("identity", "determinant identity suites");
    add_common(identity, true);

    auto* knapp = app.add_subcommand("knapp", "Knapp scaling-line scan");
    add_common(knapp, true);
    knapp->add_option("--p", cfg.p, "Lebesgue exponent p");
    knapp->add_option("--q", cfg.q, "restriction exponent q (default: scaling line)");
    knapp->add_option("--epsilon", cfg.epsilon, "damping epsilon");
    knapp->add_option("--deltas", cfg.deltas, "arc scales");

    auto* region = app.add_subcommand("region", "admissible exponent region");
    add_common(region, false);
    region->add_option("--epsilon", cfg.epsilon, "damping epsilon");
    region->add_option("--dim", cfg.dim, "dimension d");
    region->add_option("--smoothness", cfg.smoothness, "smoothness N");

    CLI11_PARSE(app, argc, argv);

    try {
        if (decompose->parsed()) return run_decompose(cfg);
        if (verify->parsed()) return run_verify_geom(cfg);
        if (identity->parsed()) return run_identity(cfg);
        if (knapp->parsed()) return run_knapp(cfg);
        if (region->parsed()) return run_region(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
