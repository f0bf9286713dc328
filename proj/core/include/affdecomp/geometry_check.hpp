#pragma once

#include <vector>

#include "affdecomp/curve.hpp"
#include "affdecomp/decomposition.hpp"
#include "affdecomp/quadrature.hpp"
#include "affdecomp/rng.hpp"

namespace affdecomp {

// Strictly increasing points inside one cell.
struct TupleSample {
    std::vector<double> points;

    TupleSample(std::vector<double> pts, const Interval& cell);
};

struct IdentityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double quadrature_estimate = 0.0;
};

IdentityResidual make_residual(double lhs, double rhs, double quad_estimate);

// v(t_1,...,t_n) = prod_{i<j} (t_j - t_i); the constant C_d is fixed to 1.
double vandermonde(const std::vector<double>& points);
double vandermonde(const TupleSample& tuple);

// J_Phi(t_1,...,t_n) = det[zeta'(t_1) ... zeta'(t_n)] for zeta the given
// n-dimensional curve (truncate/reorder first as needed).
double jacobian(const Curve& zeta, const std::vector<double>& points);
double jacobian(const Curve& zeta, const TupleSample& tuple);

// Iterated integral I_m(t_1,...,t_m) built from the minor ratios
// L_{n-m-1} L_{n-m+1} / L_{n-m}^2 (conventions L_0 = L_{-1} = 1) and the
// nested box integral of I_{m-1}. Nested adaptive quadrature with an error
// ledger; n = zeta.dim() <= 4. When a cell certificate is given, denominators
// below 2^{-k_j-3} abort with "cell certificate violated".
ValueWithError iterated_integral(const Curve& zeta, int m,
                                 const std::vector<double>& points, double tol,
                                 const std::vector<int>* k_certificate = nullptr);

struct JacobianIdentityResult {
    std::vector<IdentityResidual> residuals;
    int failures = 0;
    double max_rel_err = 0.0;
};

// Samples random increasing tuples in the cell and compares I_n against
// J_Phi for the sigma-reordered curve. A residual passes when
// rel_err <= max(tol, 4 * quadrature_estimate).
JacobianIdentityResult check_jacobian_identity(const Curve& curve,
                                               const DyadicCell& cell, int samples,
                                               double tol, uint64_t seed = 1);

// f_{i,j} = L_{zeta_1..zeta_{j-1} zeta_i} / L_{zeta_1..zeta_j} and its
// closed-form derivative from the Sylvester recursion. Indices are the
// paper-style 1-based pair with 1 <= j < i <= n.
double fij_value(const Curve& zeta, int i, int j, double t);
double fij_derivative(const Curve& zeta, int i, int j, double t);

// det[g_i(t_j)] = prod g_1(t_i) * nested integral of det[(g_i/g_1)'(s_j)]
// with g_i = zeta_{rows[i]}'; rows are 0-based, l = rows.size() <= 4.
IdentityResidual check_dw_lemma(const Curve& curve, const std::vector<int>& rows,
                                const std::vector<double>& tuple, double tol);

struct GeometricStats {
    double inf_ratio = 0.0;
    double sup_ratio = 0.0;
    double c_geom = 0.0;
    int samples = 0;
    bool pass = false;
    int jac_sign = 0;  // empirical sign of J on the sampled simplex tuples
};

// inf and sup over sampled tuples of |J| / (2^{-k_d} |v|), excluding
// near-coincident tuples (min gap 1e-6 * cell length); passes when the ratio
// stays within [c_geom, 1/c_geom], default c_geom = 2^{-3d}.
GeometricStats check_geometric_inequality(const Curve& curve, const DyadicCell& cell,
                                          int samples, uint64_t seed = 1,
                                          double c_geom = -1.0);

struct InjectivityCertificate {
    bool signed_ok = false;
    int sign_samples = 0;
    int collisions = 0;
    long n_tuples = 0;
    double min_phi_gap = 0.0;  // smallest |Phi(s) - Phi(t)| seen (0 if no tuples)
    bool brute_force_done = false;
};

// Empirical Steinig certificate: no sign change of J over sampled simplex
// tuples, plus a brute-force collision check of Phi on increasing grid
// tuples (d <= 3) at delta_collision = 1e-9. Requires a passing geometric
// inequality result.
InjectivityCertificate certify_injectivity(const Curve& curve, const DyadicCell& cell,
                                           const GeometricStats& geometric,
                                           int grid_density, uint64_t seed = 1,
                                           double delta_collision = 1e-9);

}  // namespace affdecomp
