#include "affdecomp/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace affdecomp {

double drury_p_max(int d) {
    double dd = static_cast<double>(d) * d + d;
    return (dd + 2.0) / dd;
}

ExponentPair::ExponentPair(double p_in, double q_in, int dim) : p(p_in), q(q_in), d(dim) {
    if (!(p >= 1.0) || !(p < drury_p_max(d)))
        throw std::domain_error("p outside Drury range");
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
}

double ExponentPair::p_conj() const {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

double ExponentPair::q_conj() const {
    if (q == 1.0) return std::numeric_limits<double>::infinity();
    return q / (q - 1.0);
}

double RegionSpec::deficit_sum() const {
    double s = 0.0;
    for (int j = 1; j <= d; ++j) s += 1.0 / (smoothness - j);
    return s;
}

AdmissibleQ admissible_q(const RegionSpec& region, double p) {
    if (!(p >= 1.0) || !(p < drury_p_max(region.d)))
        throw std::domain_error("p outside Drury range");
    double dd = static_cast<double>(region.d) * region.d + region.d;
    double s = region.deficit_sum();
    AdmissibleQ out;
    if (region.epsilon > s) {
        out.coefficient = 2.0 / dd;
        out.inclusive = true;
    } else {
        out.coefficient = (2.0 / dd + region.epsilon) / (1.0 + 0.5 * dd * s);
        out.inclusive = false;
    }
    double p_conj = (p == 1.0) ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
    out.bound = out.coefficient * p_conj;
    return out;
}

double min_epsilon_for_full_range(int d, double smoothness) {
    if (!(smoothness > d)) throw std::invalid_argument("need N > d");
    double dd = static_cast<double>(d) * d + d;
    RegionSpec region{d, smoothness, 0.0};
    double s = region.deficit_sum();
    return std::max(0.0, (s - 4.0 / (dd * dd)) * dd / (dd + 2.0));
}

ComplexWithError extension_operator(const Curve& curve,
                                    const std::function<double(double)>& g,
                                    const std::vector<double>& x, double tol,
                                    long max_nodes) {
    int d = curve.dim();
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("frequency point dimension mismatch");

    double sup_speed = 0.0;
    for (double t : curve.domain().grid(257)) {
        double s2 = 0.0;
        for (int i = 0; i < d; ++i) {
            double v = curve.eval_coord(i, 1, t);
            s2 += v * v;
        }
        sup_speed = std::max(sup_speed, std::sqrt(s2));
    }
    double x_norm = 0.0;
    for (double xi : x) x_norm += xi * xi;
    x_norm = std::sqrt(x_norm);

    double cycles = x_norm * curve.domain().length() * sup_speed / (2.0 * M_PI);
    long nodes = static_cast<long>(std::ceil(8.0 * (1.0 + cycles)));
    if (nodes > max_nodes)
        throw std::runtime_error("oscillation budget exceeded: would need about " +
                                 std::to_string(nodes) + " nodes");

    int panels = static_cast<int>(std::max<long>(1, nodes / 15));
    auto integrand = [&](double t) {
        double phase = 0.0;
        for (int i = 0; i < d; ++i) phase += curve.eval_coord(i, 0, t) * x[static_cast<size_t>(i)];
        return std::exp(std::complex<double>(0.0, phase)) * g(t);
    };
    return integrate_adaptive_complex(integrand, curve.domain().lo, curve.domain().hi,
                                      tol, tol * 1e-3, panels,
                                      std::max(40000L, nodes / 4));
}

double SeparableGaussian::fhat_abs(const std::vector<double>& xi) const {
    double acc = 0.0;
    for (size_t i = 0; i < widths.size(); ++i) {
        double z = (xi[i] - center[i]) / widths[i];
        acc += z * z;
    }
    return std::exp(-M_PI * acc);
}

double SeparableGaussian::lp_norm(double p) const {
    // ||f||_p = prod b_i^{1/p'} * p^{-d/(2p)}
    double log_acc = 0.0;
    double inv_p_conj = 1.0 - 1.0 / p;
    for (double b : widths) log_acc += inv_p_conj * std::log(b);
    log_acc -= (static_cast<double>(widths.size()) / (2.0 * p)) * std::log(p);
    return std::exp(log_acc);
}

SeparableGaussian SeparableGaussian::isotropic(int d, double width) {
    SeparableGaussian f;
    f.widths.assign(static_cast<size_t>(d), width);
    f.center.assign(static_cast<size_t>(d), 0.0);
    return f;
}

SeparableGaussian SeparableGaussian::knapp(const Curve& curve, double t0, double delta,
                                           int box_grid) {
    Interval arc(t0, std::min(t0 + delta, curve.domain().hi));
    int d = curve.dim();
    SeparableGaussian f;
    f.widths.assign(static_cast<size_t>(d), 0.0);
    f.center.assign(static_cast<size_t>(d), 0.0);
    std::vector<double> lo(static_cast<size_t>(d), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<size_t>(d), -std::numeric_limits<double>::infinity());
    for (double t : arc.grid(box_grid))
        for (int i = 0; i < d; ++i) {
            double v = curve.eval_coord(i, 0, t);
            lo[static_cast<size_t>(i)] = std::min(lo[static_cast<size_t>(i)], v);
            hi[static_cast<size_t>(i)] = std::max(hi[static_cast<size_t>(i)], v);
        }
    for (int i = 0; i < d; ++i) {
        f.center[static_cast<size_t>(i)] = 0.5 * (lo[static_cast<size_t>(i)] + hi[static_cast<size_t>(i)]);
        f.widths[static_cast<size_t>(i)] =
            std::max(hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)], 1e-300);
    }
    return f;
}

ValueWithError weighted_restriction_norm(
    const Curve& curve, const std::function<double(const std::vector<double>&)>& fhat_abs,
    double q, const WeightParams& params, double tol) {
    if (!(q >= 1.0)) throw std::invalid_argument("q must be at least 1");
    std::vector<double> point(static_cast<size_t>(curve.dim()));
    auto integrand = [&](double t) {
        for (int i = 0; i < curve.dim(); ++i)
            point[static_cast<size_t>(i)] = curve.eval_coord(i, 0, t);
        return std::pow(fhat_abs(point), q) * weight(curve, params, t);
    };
    ValueWithError raw = integrate_adaptive(
        std::function<double(double)>(integrand), curve.domain().lo, curve.domain().hi,
        tol, 1e-300, 64);
    if (raw.value <= 0.0) return {0.0, 0.0};
    double value = std::pow(raw.value, 1.0 / q);
    return {value, value * raw.error / (q * raw.value)};
}

KnappScan knapp_scan(const Curve& curve, double p, double q,
                     const std::vector<double>& scales, double tol) {
    ExponentPair exps(p, q, curve.dim());
    // Knapp analysis needs nondegeneracy on the window
    double tau_min = std::numeric_limits<double>::infinity();
    for (double t : curve.domain().grid(257)) tau_min = std::min(tau_min, torsion(curve, t));
    if (!(tau_min > 0.0))
        throw std::runtime_error("knapp scan needs torsion bounded below on I");

    KnappScan scan;
    WeightParams w0{0.0};
    double t0 = curve.domain().lo;
    for (double delta : scales) {
        KnappPoint pt;
        pt.delta = delta;
        try {
            SeparableGaussian f = SeparableGaussian::knapp(curve, t0, delta);
            ValueWithError num = weighted_restriction_norm(
                curve, [&f](const std::vector<double>& xi) { return f.fhat_abs(xi); }, q,
                w0, tol);
            pt.ratio = num.value / f.lp_norm(p);
        } catch (const std::runtime_error&) {
            pt.flagged = true;
            scan.partial = true;
        }
        scan.points.push_back(pt);
    }

    // least-squares slope of log2 ratio against log2(1/delta)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& pt : scan.points) {
        if (pt.flagged || !(pt.ratio > 0.0)) continue;
        double xv = -std::log2(pt.delta);
        double yv = std::log2(pt.ratio);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        ++n;
    }
    if (n >= 2) scan.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    scan.classification = scan.slope > 0.05 ? "growing" : "bounded";
    return scan;
}

RegionPolygon region_polygon(const RegionSpec& region) {
    double dd = static_cast<double>(region.d) * region.d + region.d;
    double u_max = 2.0 / (dd + 2.0);  // Drury ceiling for 1/p'
    AdmissibleQ branch = admissible_q(region, 1.0);
    double kappa = branch.coefficient;

    RegionPolygon poly;
    poly.boundary_included = branch.inclusive;
    poly.vertices.push_back({0.0, 0.0});
    poly.vertices.push_back({1.0, 0.0});
    double eps = 1e-14;
    if (kappa < u_max - eps) {
        // the sloped edge 1/q' = 1 - u/kappa exits through the 1/q' = 0 axis
        poly.vertices.push_back({0.0, kappa});
    } else if (kappa <= u_max + eps) {
        poly.vertices.push_back({0.0, u_max});
    } else {
        poly.vertices.push_back({1.0 - u_max / kappa, u_max});
        poly.vertices.push_back({0.0, u_max});
    }
    return poly;
}

}  // namespace affdecomp
