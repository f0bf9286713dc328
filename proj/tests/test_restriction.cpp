#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "affdecomp/restriction.hpp"
#include "doctest.h"

using namespace affdecomp;

TEST_CASE("admissible q branches") {
    // eps above the deficit sum: scaling line included
    RegionSpec loose{2, 4.0, 1.0};
    CHECK(loose.deficit_sum() == doctest::Approx(5.0 / 6.0));
    auto a = admissible_q(loose, 1.25);
    CHECK(a.inclusive);
    CHECK(a.coefficient == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(a.bound == doctest::Approx(5.0 / 3.0).epsilon(1e-14));  // p' = 5

    // undamped: q < (2/21) p', exclusive
    RegionSpec tight{2, 4.0, 0.0};
    auto b = admissible_q(tight, 1.25);
    CHECK(!b.inclusive);
    CHECK(b.coefficient == doctest::Approx(2.0 / 21.0).epsilon(1e-14));

    // boundary eps = S stays in the damped branch
    RegionSpec edge{2, 4.0, RegionSpec{2, 4.0, 0.0}.deficit_sum()};
    CHECK(!admissible_q(edge, 1.1).inclusive);

    CHECK_THROWS_WITH_AS(admissible_q(tight, 4.0 / 3.0), "p outside Drury range",
                         std::domain_error);
    CHECK_THROWS_AS(admissible_q(tight, 0.9), std::domain_error);

    // p = 1 gives an unbounded q range
    CHECK(std::isinf(admissible_q(loose, 1.0).bound));
}

TEST_CASE("admissible q is monotone in eps and N") {
    double prev = 0.0;
    for (double eps : {0.0, 0.2, 0.4, 0.8, 1.0, 1.5}) {
        auto a = admissible_q(RegionSpec{2, 4.0, eps}, 1.2);
        CHECK(a.coefficient >= prev - 1e-15);
        prev = a.coefficient;
    }
    prev = 0.0;
    for (double n : {2.5, 3.0, 4.0, 6.0, 10.0}) {
        auto a = admissible_q(RegionSpec{2, n, 0.1}, 1.2);
        CHECK(a.coefficient >= prev - 1e-15);
        prev = a.coefficient;
    }
}

TEST_CASE("minimal damping for the full Drury range") {
    CHECK(min_epsilon_for_full_range(2, 4.0) ==
          doctest::Approx(13.0 / 24.0).epsilon(1e-14));
    CHECK(min_epsilon_for_full_range(2, 200.0) == 0.0);

    // always below the deficit sum when positive, across a (d, N) grid
    for (int d = 2; d <= 4; ++d) {
        for (double dn = 0.25; dn <= 10.0; dn += 0.25) {
            double n = d + dn;
            double eps0 = min_epsilon_for_full_range(d, n);
            double s = RegionSpec{d, n, 0.0}.deficit_sum();
            CHECK(eps0 < s);
            CHECK(eps0 >= 0.0);
        }
    }

    // strictly decreasing and continuous in N while positive (the allowance
    // scales with the value to survive the pole at N -> d)
    double prev = min_epsilon_for_full_range(2, 2.1);
    for (double n = 2.2; n < 8.0; n += 0.1) {
        double cur = min_epsilon_for_full_range(2, n);
        if (cur > 0.0) CHECK(cur < prev);
        CHECK(std::abs(cur - prev) <= std::max(0.5 * prev, 0.05));
        prev = cur;
    }
}

TEST_CASE("extension operator") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    auto one = [](double) { return 1.0; };

    // no oscillation: plain integral of g
    auto at0 = extension_operator(m2, one, {0.0, 0.0}, 1e-10);
    CHECK(at0.value.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(at0.value.imag() == doctest::Approx(0.0));

    // x = (xi, 0): closed-form 1D oscillatory integral (e^{i xi} - 1)/(i xi)
    double xi = 7.3;
    auto osc = extension_operator(m2, one, {xi, 0.0}, 1e-10);
    std::complex<double> oracle =
        (std::exp(std::complex<double>(0.0, xi)) - 1.0) / std::complex<double>(0.0, xi);
    CHECK(osc.value.real() == doctest::Approx(oracle.real()).epsilon(1e-8));
    CHECK(osc.value.imag() == doctest::Approx(oracle.imag()).epsilon(1e-8));

    // linearity in g
    auto twice = extension_operator(m2, [](double) { return 2.0; }, {xi, 0.0}, 1e-10);
    CHECK(twice.value.real() == doctest::Approx(2.0 * osc.value.real()).epsilon(1e-12));
    CHECK(twice.value.imag() == doctest::Approx(2.0 * osc.value.imag()).epsilon(1e-12));

    // Hausdorff-Young base case: |E g(x)| <= int |g|
    for (double f : {0.5, 3.0, 20.0, 111.0}) {
        auto v = extension_operator(m2, one, {f, -0.7 * f}, 1e-9);
        CHECK(std::abs(v.value) <= 1.0 + 1e-8);
    }

    CHECK_THROWS_AS(extension_operator(m2, one, {1e12, 0.0}, 1e-8),
                    std::runtime_error);
}

TEST_CASE("separable gaussian closed forms") {
    SeparableGaussian f = SeparableGaussian::isotropic(2, 0.5);
    // numeric check of ||f||_p in one axis: int (b e^{-pi b^2 y^2})^p dy
    for (double p : {1.0, 1.25, 2.0}) {
        double b = 0.5;
        auto integrand = [&](double y) {
            return std::pow(b * std::exp(-M_PI * b * b * y * y), p);
        };
        auto num = integrate_adaptive(std::function<double(double)>(integrand), -60.0,
                                      60.0, 1e-12, 1e-14, 64);
        double axis = std::pow(num.value, 1.0 / p);
        CHECK(std::pow(f.lp_norm(p), 0.5) == doctest::Approx(axis).epsilon(1e-8));
    }
}

TEST_CASE("weighted restriction functional") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    SeparableGaussian f = SeparableGaussian::isotropic(2, 1.0);
    auto fa = [&f](const std::vector<double>& xi) { return f.fhat_abs(xi); };
    auto norm = weighted_restriction_norm(m2, fa, 2.0, {0.0}, 1e-10);
    CHECK(norm.value > 0.0);
    CHECK(std::isfinite(norm.value));
    CHECK(norm.value / f.lp_norm(1.25) > 0.0);

    // zero function
    auto zero = weighted_restriction_norm(
        m2, [](const std::vector<double>&) { return 0.0; }, 2.0, {0.0}, 1e-10);
    CHECK(zero.value == 0.0);

    // straight line: tau = 0 kills the weight regardless of f
    Curve line = Curve::polynomial_curve({{0.0, 1.0}, {0.0, 1.0}}, Interval(0.0, 1.0),
                                         3.0, 2.0);
    auto dead = weighted_restriction_norm(line, fa, 2.0, {0.0}, 1e-10);
    CHECK(dead.value == 0.0);

    // 1-homogeneous in f
    auto scaled = weighted_restriction_norm(
        m2, [&fa](const std::vector<double>& xi) { return 3.0 * fa(xi); }, 2.0, {0.0},
        1e-10);
    CHECK(scaled.value == doctest::Approx(3.0 * norm.value).epsilon(1e-9));

    // monotone in q against the probability-normalized weight
    WeightParams w{0.0};
    double total = integrate_adaptive(
                       std::function<double(double)>(
                           [&](double t) { return weight(m2, w, t); }),
                       0.0, 1.0, 1e-12, 1e-14)
                       .value;
    double prev = 0.0;
    for (double q : {1.0, 2.0, 4.0, 8.0}) {
        double raw = weighted_restriction_norm(m2, fa, q, w, 1e-11).value;
        double normalized = raw / std::pow(total, 1.0 / q);
        CHECK(normalized >= prev - 1e-9);
        prev = normalized;
    }
}

TEST_CASE("knapp dichotomy across the scaling line") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    double p = 1.3;
    double p_conj = p / (p - 1.0);
    double q_line = 2.0 * p_conj / 6.0;
    std::vector<double> scales;
    for (int e = 2; e <= 6; ++e) scales.push_back(std::ldexp(1.0, -e));

    KnappScan on_line = knapp_scan(m2, p, q_line, scales, 1e-9);
    CHECK(std::abs(on_line.slope) < 0.05);
    CHECK(on_line.classification == "bounded");
    CHECK(!on_line.partial);

    KnappScan above = knapp_scan(m2, p, 1.2 * q_line, scales, 1e-9);
    CHECK(above.slope > 0.05);
    CHECK(above.classification == "growing");

    // no localization: a single trivially finite ratio
    KnappScan whole = knapp_scan(m2, p, q_line, {1.0}, 1e-9);
    REQUIRE(whole.points.size() == 1);
    CHECK(std::isfinite(whole.points[0].ratio));
    CHECK(whole.points[0].ratio > 0.0);

    Curve line = Curve::polynomial_curve({{0.0, 1.0}, {0.0, 1.0}}, Interval(0.0, 1.0),
                                         3.0, 2.0);
    CHECK_THROWS_AS(knapp_scan(line, p, q_line, scales), std::runtime_error);
}

TEST_CASE("region polygon shapes") {
    // inclusive branch: solid edge from (1,0) to (1/4, 1/4)
    RegionPolygon solid = region_polygon(RegionSpec{2, 4.0, 1.0});
    CHECK(solid.boundary_included);
    REQUIRE(solid.vertices.size() == 4);
    CHECK(solid.vertices[1][0] == doctest::Approx(1.0));
    CHECK(solid.vertices[1][1] == doctest::Approx(0.0));
    CHECK(solid.vertices[2][0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(solid.vertices[2][1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(solid.vertices[3][0] == doctest::Approx(0.0));

    // undamped d=2, N=4: the dashed edge exits at (0, 2/21)
    RegionPolygon dashed = region_polygon(RegionSpec{2, 4.0, 0.0});
    CHECK(!dashed.boundary_included);
    REQUIRE(dashed.vertices.size() == 3);
    CHECK(dashed.vertices[2][0] == doctest::Approx(0.0));
    CHECK(dashed.vertices[2][1] == doctest::Approx(2.0 / 21.0).epsilon(1e-12));

    // equality in the N-eps interplay touches the full-range vertex
    RegionPolygon touch = region_polygon(RegionSpec{2, 4.0, 13.0 / 24.0});
    REQUIRE(touch.vertices.size() == 3);
    CHECK(touch.vertices[2][1] == doctest::Approx(0.25).epsilon(1e-12));

    // boundary monotone: 1/p' nondecreasing along the vertex list after (1,0)
    for (const auto& poly : {solid, dashed, touch})
        for (size_t i = 2; i < poly.vertices.size(); ++i)
            CHECK(poly.vertices[i][1] >= poly.vertices[i - 1][1] - 1e-15);
}
