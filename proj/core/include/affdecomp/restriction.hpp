#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "affdecomp/curve.hpp"
#include "affdecomp/minors.hpp"
#include "affdecomp/quadrature.hpp"

namespace affdecomp {

// largest p of the Drury range [1, (d^2+d+2)/(d^2+d)) (exclusive)
double drury_p_max(int d);

struct ExponentPair {
    double p = 1.0;
    double q = 1.0;
    int d = 2;

    ExponentPair(double p_in, double q_in, int dim);
    double p_conj() const;  // p' (infinity at p = 1)
    double q_conj() const;
};

struct RegionSpec {
    int d = 2;
    double smoothness = 0.0;
    double epsilon = 0.0;

    // S = sum_{j=1}^{d} 1/(N-j)
    double deficit_sum() const;
};

struct AdmissibleQ {
    double bound = 0.0;        // q bound at the given p
    double coefficient = 0.0;  // bound / p'
    bool inclusive = false;    // q <= bound vs q < bound
};

// q <= 2p'/(d^2+d) when eps > S (inclusive); otherwise the damped exclusive
// branch q < ((2/(d^2+d) + eps) / (1 + (d^2+d)/2 * S)) p'.
AdmissibleQ admissible_q(const RegionSpec& region, double p);

// smallest eps >= 0 with S <= 4/(d^2+d)^2 + eps (d^2+d+2)/(d^2+d)
double min_epsilon_for_full_range(int d, double smoothness);

// E g(x) = int_I e^{i gamma(t) . x} g(t) dt by oscillatory panel quadrature;
// node count scales with |x| |I| sup|gamma'|. Throws when the required node
// count exceeds max_nodes, reporting the requirement.
ComplexWithError extension_operator(const Curve& curve,
                                    const std::function<double(double)>& g,
                                    const std::vector<double>& x, double tol,
                                    long max_nodes = 2000000);

// Product of axis Gaussians: |fhat(xi)| = prod exp(-pi ((xi_i - c_i)/b_i)^2),
// f(y) = prod b_i e^{2 pi i c_i y_i} e^{-pi (b_i y_i)^2}, with closed-form
// ||f||_p. Knapp profiles shrink the widths to a delta-arc's bounding box.
struct SeparableGaussian {
    std::vector<double> widths;
    std::vector<double> center;

    double fhat_abs(const std::vector<double>& xi) const;
    double lp_norm(double p) const;

    static SeparableGaussian isotropic(int d, double width);
    static SeparableGaussian knapp(const Curve& curve, double t0, double delta,
                                   int box_grid = 129);
};

// (int_I |fhat(gamma(t))|^q w_eps(t) dt)^{1/q}
ValueWithError weighted_restriction_norm(
    const Curve& curve, const std::function<double(const std::vector<double>&)>& fhat_abs,
    double q, const WeightParams& params, double tol);

struct KnappPoint {
    double delta = 0.0;
    double ratio = 0.0;
    bool flagged = false;  // quadrature failure; ratio not usable
};

struct KnappScan {
    std::vector<KnappPoint> points;
    double slope = 0.0;  // d log2(ratio) / d log2(1/delta)
    std::string classification;  // "bounded" or "growing"
    bool partial = false;
};

// Ratio of the weighted restriction functional (eps = 0) against ||f||_p for
// Knapp profiles across the given scales; slope threshold 0.05 separates
// bounded from growing.
KnappScan knapp_scan(const Curve& curve, double p, double q,
                     const std::vector<double>& scales, double tol = 1e-8);

// Admissible region in the (1/q', 1/p') plane: a closed polygon through
// (0,0), (1,0) and the Drury ceiling 1/p' = 2/(d^2+d+2), with the sloped edge
// determined by the admissible_q coefficient.
struct RegionPolygon {
    std::vector<std::array<double, 2>> vertices;
    bool boundary_included = false;
};

RegionPolygon region_polygon(const RegionSpec& region);

}  // namespace affdecomp
