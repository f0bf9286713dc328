#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affdecomp/curve.hpp"
#include "affdecomp/decomposition.hpp"
#include "affdecomp/geometry_check.hpp"
#include "affdecomp/restriction.hpp"

namespace affdecomp {

// All writers emit canonical output: sorted object keys, LF newlines, floats
// at 17 significant digits, so a fixed config + seed reproduces byte-identical
// files.

struct ConfigEcho {
    uint64_t seed = 0;
    double shrink_a = 0.0;
    int hgrid_m = 0;
    int hgrid_points = 0;
    double quad_tol = 0.0;
    double id_tol = 0.0;
};

std::string decomposition_json(const Curve& curve,
                               const std::vector<DecompositionReport>& reports,
                               const ConfigEcho& config);
std::string decomposition_csv(const std::vector<DecompositionReport>& reports);

struct CellVerification {
    DyadicCell cell;
    GeometricStats geometric;
    double identity_max_rel_err = 0.0;
    int identity_samples = 0;
    int identity_failures = 0;
    InjectivityCertificate injectivity;
};

std::string verification_json(const Curve& curve,
                              const std::vector<CellVerification>& cells,
                              const ConfigEcho& config);
std::string verification_csv(const std::vector<CellVerification>& cells);

std::string knapp_json(const RegionSpec& region, double p, double q,
                       const KnappScan& scan);
// columns: d, N, epsilon, p, q, delta, ratio, slope, classification
std::string knapp_csv(const RegionSpec& region, double p, double q,
                      const KnappScan& scan);

std::string region_json(const RegionSpec& region, const RegionPolygon& polygon);
std::string region_csv(const RegionPolygon& polygon);

struct IdentitySuiteReport {
    int sylvester_total = 0;
    int sylvester_failures = 0;
    std::vector<IdentityResidual> dw_residuals;
    double jacobian_max_rel_err = 0.0;
    int jacobian_samples = 0;
    int jacobian_failures = 0;
};

std::string identity_json(const Curve& curve, const IdentitySuiteReport& report,
                          const ConfigEcho& config);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace affdecomp
