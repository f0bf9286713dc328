#include "affdecomp/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "json_canon.hpp"

namespace affdecomp {

namespace {

using nlohmann::json;

const char* stage_name(CellStage s) {
    switch (s) {
        case CellStage::initial: return "initial";
        case CellStage::shrunk: return "shrunk";
        default: return "secondary";
    }
}

json cell_to_json(const DyadicCell& cell) {
    json j;
    j["interval"] = {cell.interval.lo, cell.interval.hi};
    j["sigma"] = cell.sigma;
    j["k"] = cell.k;
    j["stage"] = stage_name(cell.stage);
    j["verified"] = cell.verified;
    if (!cell.note.empty()) j["note"] = cell.note;
    return j;
}

json scale_to_json(const DecompositionReport& r) {
    json j;
    j["k"] = r.k_d;
    j["N_k"] = r.count();
    j["count_bound"] = r.count_bound;
    j["total_length"] = r.total_length;
    j["length_bound"] = r.length_bound;
    j["uncovered_measure"] = r.uncovered_measure;
    j["initial_count"] = r.initial_count;
    j["shrunk_count"] = r.shrunk_count;
    j["flagged"] = r.flagged;
    json cells = json::array();
    for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
    j["cells"] = cells;
    return j;
}

json config_to_json(const ConfigEcho& config) {
    json j;
    j["seed"] = config.seed;
    j["shrink_A"] = config.shrink_a;
    j["hgrid_m"] = config.hgrid_m;
    j["hgrid_points"] = config.hgrid_points;
    j["quad_tol"] = config.quad_tol;
    j["id_tol"] = config.id_tol;
    return j;
}

json curve_to_json(const Curve& curve) {
    return json::parse(curve_spec_json(curve));
}

}  // namespace

std::string decomposition_json(const Curve& curve,
                               const std::vector<DecompositionReport>& reports,
                               const ConfigEcho& config) {
    json j;
    j["curve"] = curve_to_json(curve);
    j["config"] = config_to_json(config);
    json scales = json::array();
    double total_flagged = 0;
    for (const auto& r : reports) {
        scales.push_back(scale_to_json(r));
        total_flagged += static_cast<double>(r.flagged.size());
    }
    j["scales"] = scales;
    j["zero_set_note"] =
        "points with tau below the smallest scale's band are excluded by construction";
    j["total_flagged"] = total_flagged;

    // numerical stand-in for {tau = 0}: grid mass below the deepest band
    if (!reports.empty()) {
        int k_max = reports.front().k_d;
        for (const auto& r : reports) k_max = std::max(k_max, r.k_d);
        double floor_band = std::ldexp(1.0, -k_max - 1);
        const int grid_n = 10001;
        int below = 0;
        for (double t : curve.domain().grid(grid_n))
            if (torsion(curve, t) < floor_band) ++below;
        j["below_scale_measure"] =
            curve.domain().length() * static_cast<double>(below) / grid_n;
    }
    return canonical_json_dump(j) + "\n";
}

std::string decomposition_csv(const std::vector<DecompositionReport>& reports) {
    std::string out =
        "k,N_k,count_bound,total_length,length_bound,uncovered_measure,flagged\n";
    for (const auto& r : reports) {
        out += std::to_string(r.k_d) + "," + std::to_string(r.count()) + "," +
               canonical_float(r.count_bound) + "," + canonical_float(r.total_length) +
               "," + canonical_float(r.length_bound) + "," +
               canonical_float(r.uncovered_measure) + "," +
               std::to_string(r.flagged.size()) + "\n";
    }
    return out;
}

std::string verification_json(const Curve& curve,
                              const std::vector<CellVerification>& cells,
                              const ConfigEcho& config) {
    json j;
    j["curve"] = curve_to_json(curve);
    j["config"] = config_to_json(config);
    json arr = json::array();
    for (const auto& v : cells) {
        json c;
        c["cell"] = cell_to_json(v.cell);
        c["geometric"] = {{"inf_ratio", v.geometric.inf_ratio},
                          {"sup_ratio", v.geometric.sup_ratio},
                          {"pass", v.geometric.pass},
                          {"jac_sign", v.geometric.jac_sign}};
        c["identity"] = {{"max_rel_err", v.identity_max_rel_err},
                         {"n_samples", v.identity_samples},
                         {"failures", v.identity_failures}};
        c["injectivity"] = {{"signed_ok", v.injectivity.signed_ok},
                            {"collisions", v.injectivity.collisions},
                            {"n_tuples", v.injectivity.n_tuples},
                            {"brute_force", v.injectivity.brute_force_done}};
        arr.push_back(c);
    }
    j["cells"] = arr;
    return canonical_json_dump(j) + "\n";
}

std::string verification_csv(const std::vector<CellVerification>& cells) {
    std::string out =
        "lo,hi,k_d,inf_ratio,sup_ratio,geometric_pass,identity_max_rel_err,"
        "collisions,signed_ok\n";
    for (const auto& v : cells) {
        out += canonical_float(v.cell.interval.lo) + "," +
               canonical_float(v.cell.interval.hi) + "," +
               std::to_string(v.cell.k.back()) + "," +
               canonical_float(v.geometric.inf_ratio) + "," +
               canonical_float(v.geometric.sup_ratio) + "," +
               (v.geometric.pass ? "1," : "0,") +
               canonical_float(v.identity_max_rel_err) + "," +
               std::to_string(v.injectivity.collisions) + "," +
               (v.injectivity.signed_ok ? "1" : "0") + "\n";
    }
    return out;
}

std::string knapp_json(const RegionSpec& region, double p, double q,
                       const KnappScan& scan) {
    json j;
    j["d"] = region.d;
    j["N"] = region.smoothness;
    j["epsilon"] = region.epsilon;
    j["p"] = p;
    j["q"] = q;
    j["slope"] = scan.slope;
    j["classification"] = scan.classification;
    j["partial"] = scan.partial;
    json pts = json::array();
    for (const auto& pt : scan.points)
        pts.push_back({{"delta", pt.delta}, {"ratio", pt.ratio}, {"flagged", pt.flagged}});
    j["points"] = pts;
    return canonical_json_dump(j) + "\n";
}

std::string knapp_csv(const RegionSpec& region, double p, double q,
                      const KnappScan& scan) {
    std::string out = "d,N,epsilon,p,q,delta,ratio,slope,classification\n";
    for (const auto& pt : scan.points) {
        out += std::to_string(region.d) + "," + canonical_float(region.smoothness) +
               "," + canonical_float(region.epsilon) + "," + canonical_float(p) + "," +
               canonical_float(q) + "," + canonical_float(pt.delta) + "," +
               canonical_float(pt.ratio) + "," + canonical_float(scan.slope) + "," +
               scan.classification + "\n";
    }
    return out;
}

std::string region_json(const RegionSpec& region, const RegionPolygon& polygon) {
    json j;
    j["d"] = region.d;
    j["N"] = region.smoothness;
    j["epsilon"] = region.epsilon;
    j["deficit_sum"] = region.deficit_sum();
    j["boundary_included"] = polygon.boundary_included;
    json verts = json::array();
    for (const auto& v : polygon.vertices) verts.push_back({v[0], v[1]});
    j["vertices"] = verts;  // (1/q', 1/p') pairs, closed polygon
    return canonical_json_dump(j) + "\n";
}

std::string region_csv(const RegionPolygon& polygon) {
    std::string out = "inv_q_conj,inv_p_conj\n";
    for (const auto& v : polygon.vertices)
        out += canonical_float(v[0]) + "," + canonical_float(v[1]) + "\n";
    return out;
}

std::string identity_json(const Curve& curve, const IdentitySuiteReport& report,
                          const ConfigEcho& config) {
    json j;
    j["curve"] = curve_to_json(curve);
    j["config"] = config_to_json(config);
    j["sylvester"] = {{"total", report.sylvester_total},
                      {"failures", report.sylvester_failures}};
    double dw_max = 0.0;
    for (const auto& r : report.dw_residuals) dw_max = std::max(dw_max, r.rel_err);
    j["dendrinos_wright"] = {{"n_samples", report.dw_residuals.size()},
                             {"max_rel_err", dw_max}};
    j["jacobian_identity"] = {{"max_rel_err", report.jacobian_max_rel_err},
                              {"n_samples", report.jacobian_samples},
                              {"failures", report.jacobian_failures}};
    return canonical_json_dump(j) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace affdecomp
