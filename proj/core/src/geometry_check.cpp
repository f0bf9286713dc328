#include "affdecomp/geometry_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affdecomp/minors.hpp"

namespace affdecomp {

TupleSample::TupleSample(std::vector<double> pts, const Interval& cell)
    : points(std::move(pts)) {
    double tol = 1e-12 * std::max(1.0, cell.length());
    for (size_t i = 0; i < points.size(); ++i) {
        if (!cell.contains(points[i], tol))
            throw std::invalid_argument("tuple point outside the cell");
        if (i > 0 && points[i] <= points[i - 1])
            throw std::invalid_argument("tuple points must be strictly increasing");
    }
}

IdentityResidual make_residual(double lhs, double rhs, double quad_estimate) {
    IdentityResidual r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.quadrature_estimate = quad_estimate;
    return r;
}

double vandermonde(const std::vector<double>& points) {
    double v = 1.0;
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j) v *= points[j] - points[i];
    return v;
}

double vandermonde(const TupleSample& tuple) { return vandermonde(tuple.points); }

double jacobian(const Curve& zeta, const TupleSample& tuple) {
    return jacobian(zeta, tuple.points);
}

double jacobian(const Curve& zeta, const std::vector<double>& points) {
    int n = zeta.dim();
    if (static_cast<int>(points.size()) != n)
        throw std::invalid_argument("jacobian needs dim(zeta) points");
    std::vector<double> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<size_t>(i) * n + j] = zeta.eval_coord(i, 1, points[static_cast<size_t>(j)]);
    return det_dense(m, n);
}

namespace {

// L_j along the identity truncation, with the conventions L_0 = L_{-1} = 1.
double minor_or_one(const Curve& zeta, int j, double t, const std::vector<int>* kcert) {
    if (j <= 0) return 1.0;
    double v = minor_value(zeta, identity_permutation(zeta.dim()), j, t);
    if (kcert) {
        double floor_v = std::ldexp(1.0, -(*kcert)[static_cast<size_t>(j - 1)] - 3);
        if (std::abs(v) < floor_v) throw std::runtime_error("cell certificate violated");
    } else if (std::abs(v) < 1e-300) {
        throw std::runtime_error("cell certificate violated");
    }
    return v;
}

ValueWithError iterated_impl(const Curve& zeta, int m, const std::vector<double>& pts,
                             double tol, const std::vector<int>* kcert) {
    int n = zeta.dim();
    if (m == 1) {
        double l1 = minor_or_one(zeta, n - 2, pts[0], kcert);
        double l2 = minor_or_one(zeta, n, pts[0], kcert);
        double den = minor_or_one(zeta, n - 1, pts[0], kcert);
        double v = l1 * l2 / (den * den);
        return {v, 4e-16 * std::abs(v)};
    }

    double pref = 1.0;
    for (int j = 0; j < m; ++j) {
        double t = pts[static_cast<size_t>(j)];
        double num = minor_or_one(zeta, n - m - 1, t, kcert) *
                     minor_or_one(zeta, n - m + 1, t, kcert);
        double den = minor_or_one(zeta, n - m, t, kcert);
        pref *= num / (den * den);
    }

    // (m-1)-dimensional box integral over s_i in [t_i, t_{i+1}] of I_{m-1}
    std::vector<double> s(static_cast<size_t>(m - 1), 0.0);
    std::function<ValueWithError(int)> integrate_dim = [&](int dim) -> ValueWithError {
        if (dim == m - 1) return iterated_impl(zeta, m - 1, s, tol * 0.25, kcert);
        return integrate_adaptive(
            [&](double x) {
                s[static_cast<size_t>(dim)] = x;
                return integrate_dim(dim + 1);
            },
            pts[static_cast<size_t>(dim)], pts[static_cast<size_t>(dim) + 1], tol, 1e-300,
            1, 4000);
    };
    ValueWithError box = integrate_dim(0);
    return {pref * box.value, std::abs(pref) * box.error};
}

}  // namespace

ValueWithError iterated_integral(const Curve& zeta, int m,
                                 const std::vector<double>& points, double tol,
                                 const std::vector<int>* k_certificate) {
    int n = zeta.dim();
    if (n > 4)
        throw std::invalid_argument("nested integrator supports truncations up to n = 4");
    if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= dim(zeta)");
    if (static_cast<int>(points.size()) != m)
        throw std::invalid_argument("iterated integral needs m points");
    return iterated_impl(zeta, m, points, tol, k_certificate);
}

JacobianIdentityResult check_jacobian_identity(const Curve& curve,
                                               const DyadicCell& cell, int samples,
                                               double tol, uint64_t seed) {
    Curve zeta = curve.reorder(cell.sigma).with_domain(cell.interval);
    int n = zeta.dim();
    if (n > 4)
        throw std::invalid_argument("nested integrator supports truncations up to n = 4");
    CounterRng rng(seed, 0x1d);

    JacobianIdentityResult out;
    double min_gap = 1e-6 * cell.interval.length();
    for (int s = 0; s < samples; ++s) {
        std::vector<double> pts(static_cast<size_t>(n));
        for (int attempt = 0;; ++attempt) {
            for (auto& t : pts) t = rng.uniform(cell.interval.lo, cell.interval.hi);
            std::sort(pts.begin(), pts.end());
            bool ok = true;
            for (size_t i = 1; i < pts.size(); ++i)
                ok &= (pts[i] - pts[i - 1] >= min_gap);
            if (ok) break;
            if (attempt > 200) throw std::runtime_error("cell below tuple resolution");
        }
        double lhs = jacobian(zeta, pts);
        ValueWithError rhs = iterated_integral(zeta, n, pts, tol * 1e-2, &cell.k);
        double quad_rel = rhs.error / std::max({std::abs(lhs), std::abs(rhs.value), 1e-300});
        IdentityResidual r = make_residual(lhs, rhs.value, quad_rel);
        out.max_rel_err = std::max(out.max_rel_err, r.rel_err);
        if (r.rel_err > std::max(tol, 4.0 * quad_rel)) ++out.failures;
        out.residuals.push_back(r);
    }
    return out;
}

namespace {

std::vector<int> leading_rows(int count) {
    std::vector<int> rows;
    for (int r = 0; r < count; ++r) rows.push_back(r);
    return rows;
}

}  // namespace

double fij_value(const Curve& zeta, int i, int j, double t) {
    if (!(1 <= j && j < i && i <= zeta.dim()))
        throw std::invalid_argument("need 1 <= j < i <= dim(zeta)");
    std::vector<int> num = leading_rows(j - 1);
    num.push_back(i - 1);
    double den = generalized_minor(zeta, leading_rows(j), t);
    if (den == 0.0) throw std::runtime_error("denominator minor vanishes");
    return generalized_minor(zeta, num, t) / den;
}

double fij_derivative(const Curve& zeta, int i, int j, double t) {
    if (!(1 <= j && j < i && i <= zeta.dim()))
        throw std::invalid_argument("need 1 <= j < i <= dim(zeta)");
    std::vector<int> top = leading_rows(j + 1);
    top[static_cast<size_t>(j)] = i - 1;  // rows zeta_1 .. zeta_j zeta_i
    double den = generalized_minor(zeta, leading_rows(j), t);
    if (den == 0.0) throw std::runtime_error("denominator minor vanishes");
    return generalized_minor(zeta, leading_rows(j - 1), t) *
           generalized_minor(zeta, top, t) / (den * den);
}

IdentityResidual check_dw_lemma(const Curve& curve, const std::vector<int>& rows,
                                const std::vector<double>& tuple, double tol) {
    int l = static_cast<int>(rows.size());
    if (l < 1 || l > 4) throw std::invalid_argument("DW check supports 1 <= l <= 4 rows");
    if (static_cast<int>(tuple.size()) != l)
        throw std::invalid_argument("tuple size must match rows");

    auto g = [&](int i, double t) {
        return curve.eval_coord(rows[static_cast<size_t>(i)], 1, t);
    };
    auto gp = [&](int i, double t) {
        return curve.eval_coord(rows[static_cast<size_t>(i)], 2, t);
    };

    Interval span(tuple.front(), tuple.back());
    for (double t : span.grid(129))
        if (std::abs(g(0, t)) < 1e-300)
            throw std::runtime_error("g1 vanishes on the spanned interval");

    std::vector<double> lhs_m(static_cast<size_t>(l) * l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            lhs_m[static_cast<size_t>(i) * l + j] = g(i, tuple[static_cast<size_t>(j)]);
    double lhs = det_dense(lhs_m, l);

    double pref = 1.0;
    for (double t : tuple) pref *= g(0, t);

    // f_i' = (g_i' g_1 - g_i g_1') / g_1^2 for i >= 2
    auto fprime = [&](int i, double s) {
        double g1 = g(0, s);
        return (gp(i, s) * g1 - g(i, s) * gp(0, s)) / (g1 * g1);
    };

    ValueWithError box{1.0, 0.0};
    if (l >= 2) {
        std::vector<double> s(static_cast<size_t>(l - 1), 0.0);
        std::function<ValueWithError(int)> integrate_dim = [&](int dim) -> ValueWithError {
            if (dim == l - 1) {
                int k = l - 1;
                std::vector<double> m(static_cast<size_t>(k) * k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        m[static_cast<size_t>(i) * k + j] =
                            fprime(i + 1, s[static_cast<size_t>(j)]);
                double v = det_dense(m, k);
                return ValueWithError{v, 4e-16 * std::abs(v)};
            }
            return integrate_adaptive(
                [&](double x) {
                    s[static_cast<size_t>(dim)] = x;
                    return integrate_dim(dim + 1);
                },
                tuple[static_cast<size_t>(dim)], tuple[static_cast<size_t>(dim) + 1],
                tol * 0.1, 1e-300, 1, 4000);
        };
        box = integrate_dim(0);
    }
    double rhs = pref * box.value;
    double quad_rel = std::abs(pref) * box.error /
                      std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return make_residual(lhs, rhs, quad_rel);
}

GeometricStats check_geometric_inequality(const Curve& curve, const DyadicCell& cell,
                                          int samples, uint64_t seed, double c_geom) {
    int d = curve.dim();
    if (c_geom <= 0.0) c_geom = std::ldexp(1.0, -3 * d);
    Curve zeta = curve.reorder(cell.sigma).with_domain(cell.interval);
    double len = cell.interval.length();
    double min_gap = 1e-6 * len;
    if (!(len > 0.0) || !((d - 1) * min_gap < len))
        throw std::runtime_error("cell below tuple resolution");

    CounterRng rng(seed, 0x6e0);
    double scale = std::ldexp(1.0, -cell.k.back());

    GeometricStats stats;
    stats.c_geom = c_geom;
    stats.inf_ratio = std::numeric_limits<double>::infinity();
    stats.sup_ratio = 0.0;
    std::vector<double> pts(static_cast<size_t>(d));
    for (int s = 0; s < samples; ++s) {
        bool ok = false;
        for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
            for (auto& t : pts) t = rng.uniform(cell.interval.lo, cell.interval.hi);
            std::sort(pts.begin(), pts.end());
            ok = true;
            for (size_t i = 1; i < pts.size(); ++i)
                ok &= (pts[i] - pts[i - 1] >= min_gap);
        }
        if (!ok) throw std::runtime_error("cell below tuple resolution");
        double jac = jacobian(zeta, pts);
        double ratio = std::abs(jac) / (scale * std::abs(vandermonde(pts)));
        stats.inf_ratio = std::min(stats.inf_ratio, ratio);
        stats.sup_ratio = std::max(stats.sup_ratio, ratio);
        if (stats.jac_sign == 0) stats.jac_sign = jac > 0.0 ? 1 : (jac < 0.0 ? -1 : 0);
        ++stats.samples;
    }
    stats.pass = stats.inf_ratio >= c_geom && stats.sup_ratio <= 1.0 / c_geom;
    return stats;
}

InjectivityCertificate certify_injectivity(const Curve& curve, const DyadicCell& cell,
                                           const GeometricStats& geometric,
                                           int grid_density, uint64_t seed,
                                           double delta_collision) {
    if (!geometric.pass)
        throw std::invalid_argument(
            "certificate refused: cell failed the geometric inequality");
    int d = curve.dim();
    Curve zeta = curve.reorder(cell.sigma).with_domain(cell.interval);

    InjectivityCertificate cert;

    // (a) single-signedness of J over random simplex tuples
    CounterRng rng(seed, 0x51);
    double min_gap = 1e-6 * cell.interval.length();
    int want = 10000;
    double sign = 0.0;
    std::vector<double> pts(static_cast<size_t>(d));
    for (int s = 0; s < want; ++s) {
        bool ok = false;
        for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
            for (auto& t : pts) t = rng.uniform(cell.interval.lo, cell.interval.hi);
            std::sort(pts.begin(), pts.end());
            ok = true;
            for (size_t i = 1; i < pts.size(); ++i)
                ok &= (pts[i] - pts[i - 1] >= min_gap);
        }
        if (!ok) continue;
        double j = jacobian(zeta, pts);
        if (j == 0.0 || (sign != 0.0 && j * sign < 0.0))
            throw std::runtime_error("Jacobian sign change: cell certificate invalid");
        if (sign == 0.0) sign = j > 0 ? 1.0 : -1.0;
        ++cert.sign_samples;
    }
    cert.signed_ok = true;

    // (b) brute-force Phi collisions over increasing grid tuples
    if (d <= 3) {
        std::vector<double> grid = cell.interval.grid(grid_density);
        std::vector<std::vector<int>> tuples;
        std::vector<int> idx(static_cast<size_t>(d));
        std::function<void(int, int)> build = [&](int pos, int start) {
            if (pos == d) {
                tuples.push_back(idx);
                return;
            }
            for (int i = start; i < static_cast<int>(grid.size()); ++i) {
                idx[static_cast<size_t>(pos)] = i;
                build(pos + 1, i + 1);
            }
        };
        build(0, 0);

        std::vector<std::vector<double>> phi(tuples.size(), std::vector<double>(static_cast<size_t>(d), 0.0));
        for (size_t t = 0; t < tuples.size(); ++t)
            for (int pos = 0; pos < d; ++pos) {
                double x = grid[static_cast<size_t>(tuples[t][static_cast<size_t>(pos)])];
                for (int i = 0; i < d; ++i)
                    phi[t][static_cast<size_t>(i)] += zeta.eval_coord(i, 0, x);
            }

        std::vector<size_t> order(phi.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return phi[a][0] < phi[b][0]; });

        cert.n_tuples = static_cast<long>(phi.size());
        cert.min_phi_gap = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < order.size(); ++a) {
            for (size_t b = a + 1; b < order.size(); ++b) {
                if (phi[order[b]][0] - phi[order[a]][0] >= cert.min_phi_gap &&
                    phi[order[b]][0] - phi[order[a]][0] >= delta_collision)
                    break;
                double dist2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    double diff = phi[order[a]][static_cast<size_t>(i)] -
                                  phi[order[b]][static_cast<size_t>(i)];
                    dist2 += diff * diff;
                }
                double dist = std::sqrt(dist2);
                cert.min_phi_gap = std::min(cert.min_phi_gap, dist);
                if (dist < delta_collision) ++cert.collisions;
            }
        }
        if (!std::isfinite(cert.min_phi_gap)) cert.min_phi_gap = 0.0;
        cert.brute_force_done = true;
    }
    return cert;
}

}  // namespace affdecomp
