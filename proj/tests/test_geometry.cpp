#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "affdecomp/geometry_check.hpp"
#include "affdecomp/minors.hpp"
#include "doctest.h"

using namespace affdecomp;

namespace {

Curve cubic() {
    return Curve::polynomial_curve({{0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}},
                                   Interval(0.0, 1.0), 4.0);
}

DyadicCell make_cell(const Curve& curve, Interval iv) {
    DyadicCell cell;
    cell.interval = iv;
    cell.sigma = identity_permutation(curve.dim());
    cell.k.clear();
    for (int j = 1; j <= curve.dim(); ++j)
        cell.k.push_back(dyadic_index(
            std::abs(minor_value(curve, cell.sigma, j, iv.mid()))));
    cell.stage = CellStage::secondary;
    return cell;
}

}  // namespace

TEST_CASE("vandermonde") {
    CHECK(vandermonde({0.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(vandermonde({0.3, 0.3, 0.9}) == 0.0);
    CHECK(vandermonde({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(12.0));
    CHECK(vandermonde({0.5}) == 1.0);
}

TEST_CASE("tuple samples enforce ordering inside the cell") {
    Interval cell(0.0, 1.0);
    TupleSample good({0.1, 0.5, 0.9}, cell);
    CHECK(vandermonde(good) == doctest::Approx(0.4 * 0.8 * 0.4));
    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    CHECK(jacobian(m3, good) == doctest::Approx(6.0 * vandermonde(good)));
    CHECK_THROWS_AS(TupleSample({0.5, 0.1}, cell), std::invalid_argument);
    CHECK_THROWS_AS(TupleSample({0.1, 1.5}, cell), std::invalid_argument);
}

TEST_CASE("jacobian closed forms") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    for (auto [a, b] : {std::pair{0.1, 0.4}, {0.2, 0.9}}) {
        CHECK(jacobian(m2, {a, b}) == doctest::Approx(2.0 * (b - a)));
        CHECK(jacobian(m2, {a, b}) == doctest::Approx(2.0 * vandermonde({a, b})));
    }

    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    for (auto pts : {std::vector<double>{0.1, 0.3, 0.8}, {0.05, 0.5, 0.95}})
        CHECK(jacobian(m3, pts) == doctest::Approx(6.0 * vandermonde(pts)));

    CHECK(jacobian(m2, {0.4, 0.4}) == doctest::Approx(0.0));
}

TEST_CASE("antisymmetry under point swaps") {
    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    CounterRng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> pts = {rng.uniform(0, 1), rng.uniform(0, 1),
                                   rng.uniform(0, 1)};
        std::vector<double> swapped = {pts[1], pts[0], pts[2]};
        double j1 = jacobian(m3, pts), j2 = jacobian(m3, swapped);
        double v1 = vandermonde(pts), v2 = vandermonde(swapped);
        CHECK(j1 == doctest::Approx(-j2).epsilon(1e-12));
        CHECK(v1 == doctest::Approx(-v2).epsilon(1e-12));
        if (v1 != 0.0)
            CHECK(j1 / v1 == doctest::Approx(j2 / v2).epsilon(1e-12));
    }
}

TEST_CASE("iterated integrals on the moment curve") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    // I_1 = L_0 L_2 / L_1^2 = 2
    CHECK(iterated_integral(m2, 1, {0.3}, 1e-10).value == doctest::Approx(2.0));
    // I_2(t1,t2) = int 2 = 2(t2 - t1) = J
    auto i2 = iterated_integral(m2, 2, {0.2, 0.7}, 1e-10);
    CHECK(i2.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(i2.error <= 1e-6);
    // degenerate tuple: empty integration range
    CHECK(iterated_integral(m2, 2, {0.4, 0.4}, 1e-10).value == 0.0);

    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    std::vector<double> pts = {0.1, 0.45, 0.9};
    auto i3 = iterated_integral(m3, 3, pts, 1e-10);
    CHECK(i3.value == doctest::Approx(6.0 * vandermonde(pts)).epsilon(1e-8));

    // a certificate claiming |L_1| ~ 2^{9} puts the floor far above L_1 = 1
    std::vector<int> bad_cert = {-9, -9};
    CHECK_THROWS_WITH_AS(iterated_integral(m2, 2, {0.2, 0.7}, 1e-10, &bad_cert).value,
                         "cell certificate violated", std::runtime_error);
}

TEST_CASE("jacobian identity on cells") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    auto res2 = check_jacobian_identity(m2, make_cell(m2, Interval(0.0, 1.0)), 50,
                                        1e-10, 7);
    CHECK(res2.failures == 0);
    CHECK(res2.max_rel_err <= 1e-12);

    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    auto res3 = check_jacobian_identity(m3, make_cell(m3, Interval(0.0, 1.0)), 100,
                                        1e-6, 7);
    CHECK(res3.failures == 0);
    CHECK(res3.max_rel_err <= 1e-6);

    Curve c = cubic();
    auto resc = check_jacobian_identity(c, make_cell(c, Interval(0.25, 0.5)), 100,
                                        1e-5, 7);
    CHECK(resc.failures == 0);
    CHECK(resc.max_rel_err <= 1e-5);
}

TEST_CASE("f_{i,j} quotients") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    // f'_{2,1} = L_empty * L_{z1 z2} / L_{z1}^2 = 2
    CHECK(fij_derivative(m2, 2, 1, 0.4) == doctest::Approx(2.0));

    // central finite difference of f_{i,j} against the closed form
    Curve m3 = Curve::moment_curve(3, Interval(0.0, 2.0));
    double h = 1e-5;
    for (auto [i, j] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
        for (double t : {0.4, 0.8, 1.3}) {
            double fd = (fij_value(m3, i, j, t + h) - fij_value(m3, i, j, t - h)) /
                        (2.0 * h);
            double closed = fij_derivative(m3, i, j, t);
            CHECK(fd == doctest::Approx(closed).epsilon(1e-6));
        }
    }
    CHECK(fij_derivative(m3, 3, 2, 1.0) ==
          doctest::Approx((fij_value(m3, 3, 2, 1.0 + h) -
                           fij_value(m3, 3, 2, 1.0 - h)) /
                          (2.0 * h)).epsilon(1e-6));

    // I_1 equals the 1x1 case f'_{n,n-1} pointwise
    for (double t : {0.3, 0.9, 1.7})
        CHECK(iterated_integral(m3, 1, {t}, 1e-12).value ==
              doctest::Approx(fij_derivative(m3, 3, 2, t)).epsilon(1e-12));

    // (t^2, t) has L_{z1} = 2t, which vanishes at t = 0
    Curve swapped = Curve::polynomial_curve({{0.0, 0.0, 1.0}, {0.0, 1.0}},
                                            Interval(-1.0, 1.0), 4.0);
    CHECK_THROWS_WITH_AS(fij_derivative(swapped, 2, 1, 0.0),
                         "denominator minor vanishes", std::runtime_error);
}

TEST_CASE("dendrinos-wright lemma") {
    // g = (1, t): gamma = (t, t^2/2) so gamma' = (1, t)
    Curve lin = Curve::polynomial_curve({{0.0, 1.0}, {0.0, 0.0, 0.5}},
                                        Interval(0.0, 1.0), 4.0);
    auto r = check_dw_lemma(lin, {0, 1}, {0.2, 0.9}, 1e-10);
    CHECK(r.lhs == doctest::Approx(0.7));
    CHECK(r.rel_err <= 1e-9);

    // g = (1, t, t^2): both sides equal v(t1,t2,t3)
    Curve quad = Curve::polynomial_curve(
        {{0.0, 1.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0, 1.0 / 3.0}}, Interval(0.0, 1.0),
        4.5);
    std::vector<double> pts = {0.1, 0.5, 0.8};
    auto r3 = check_dw_lemma(quad, {0, 1, 2}, pts, 1e-10);
    CHECK(r3.lhs == doctest::Approx(vandermonde(pts)));
    CHECK(r3.rel_err <= 1e-8);

    // offspring moment-curve derivatives
    Curve m3 = offspring(Curve::moment_curve(3, Interval(0.0, 2.0)),
                         OffspringShift({0.0, 0.5}));
    auto ro = check_dw_lemma(m3, {0, 1, 2}, {0.2, 0.7, 1.3}, 1e-9);
    CHECK(ro.rel_err <= 1e-6);

    Curve swapped = Curve::polynomial_curve({{0.0, 0.0, 1.0}, {0.0, 1.0}},
                                            Interval(-1.0, 1.0), 4.0);
    CHECK_THROWS_AS(check_dw_lemma(swapped, {0, 1}, {-0.5, 0.5}, 1e-9),
                    std::runtime_error);
}

TEST_CASE("geometric inequality ratios") {
    // moment d=2: tau = 2 lives in the half-open cell k_2 = -2, so the ratio
    // |J| / (2^{-k_2} |v|) = 2/4 is constant at 0.5
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    auto g2 = check_geometric_inequality(m2, make_cell(m2, Interval(0.0, 1.0)), 2000, 5);
    CHECK(g2.inf_ratio == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(g2.sup_ratio == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(g2.pass);

    // moment d=3: J = 6v and tau = 12 in cell k_3 = -4, ratio = 6/16
    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    auto g3 = check_geometric_inequality(m3, make_cell(m3, Interval(0.0, 1.0)), 2000, 5);
    // constant up to determinant roundoff on near-coincident tuples
    CHECK(g3.inf_ratio == doctest::Approx(g3.sup_ratio).epsilon(1e-3));
    CHECK(g3.inf_ratio == doctest::Approx(6.0 / 16.0).epsilon(1e-3));
    CHECK(g3.pass);

    // cubic cell [1/96, 1/48]: empirical ratio within [c, 1/c]
    Curve c = cubic();
    auto gc = check_geometric_inequality(
        c, make_cell(c, Interval(1.0 / 96.0, 1.0 / 48.0)), 10000, 5);
    CHECK(gc.pass);
    CHECK(gc.inf_ratio >= gc.c_geom);
    CHECK(gc.sup_ratio <= 1.0 / gc.c_geom);

    DyadicCell degenerate = make_cell(m2, Interval(0.0, 1.0));
    degenerate.interval = Interval(0.25, 0.25);
    CHECK_THROWS_WITH_AS(check_geometric_inequality(m2, degenerate, 10, 5),
                         "cell below tuple resolution", std::runtime_error);
}

TEST_CASE("injectivity certificates") {
    Curve m2 = Curve::moment_curve(2, Interval(0.0, 1.0));
    DyadicCell cell2 = make_cell(m2, Interval(0.0, 1.0));
    auto geo2 = check_geometric_inequality(m2, cell2, 2000, 5);
    auto cert2 = certify_injectivity(m2, cell2, geo2, 50, 5);
    CHECK(cert2.signed_ok);
    CHECK(cert2.collisions == 0);
    CHECK(cert2.n_tuples == 1225);
    CHECK(cert2.brute_force_done);
    CHECK(cert2.min_phi_gap > 1e-9);

    Curve m3 = Curve::moment_curve(3, Interval(0.0, 1.0));
    DyadicCell cell3 = make_cell(m3, Interval(0.0, 1.0));
    auto geo3 = check_geometric_inequality(m3, cell3, 2000, 5);
    auto cert3 = certify_injectivity(m3, cell3, geo3, 20, 5);
    CHECK(cert3.collisions == 0);
    CHECK(cert3.n_tuples == 1140);

    GeometricStats failed = geo2;
    failed.pass = false;
    CHECK_THROWS_AS(certify_injectivity(m2, cell2, failed, 50, 5),
                    std::invalid_argument);
}

TEST_CASE("box integral homogeneity under dilation") {
    // the staggered box integral of v is homogeneous: degree 1 for m=2 and
    // degree 3 for m=3; scaling the tuple by lambda scales it by
    // lambda^{m(m-1)/2}
    auto box2 = [](double t1, double t2) { return t2 - t1; };
    auto box3 = [](double t1, double t2, double t3) {
        // int_{t1}^{t2} int_{t2}^{t3} (s2 - s1) ds = closed form
        return 0.5 * ((t2 - t1) * (t3 * t3 - t2 * t2) -
                      (t3 - t2) * (t2 * t2 - t1 * t1));
    };
    double lambda = 1.7;
    for (auto [a, b, c] : {std::tuple{0.1, 0.4, 0.9}, {0.2, 0.3, 0.5}}) {
        CHECK(box2(lambda * a, lambda * b) ==
              doctest::Approx(lambda * box2(a, b)).epsilon(1e-12));
        CHECK(box3(lambda * a, lambda * b, lambda * c) ==
              doctest::Approx(std::pow(lambda, 3.0) * box3(a, b, c)).epsilon(1e-12));
    }
}

TEST_CASE("exhausted interval budgets report the partial estimate") {
    auto rough = [](double s) { return std::sqrt(std::abs(s - 0.3)); };
    CHECK_THROWS_WITH_AS(
        integrate_adaptive(std::function<double(double)>(rough), 0.0, 1.0, 1e-14,
                           1e-300, 1, 7),
        doctest::Contains("partial estimate"), std::runtime_error);
}

TEST_CASE("quadrature estimates track the tolerance on rough integrands") {
    auto rough = [](double s) { return std::sqrt(std::abs(s - 0.3)); };
    double oracle = (std::pow(0.3, 1.5) + std::pow(0.7, 1.5)) * 2.0 / 3.0;
    double prev_err = 1.0;
    for (double tol : {1e-3, 1e-5, 1e-7, 1e-9}) {
        auto r = integrate_adaptive(std::function<double(double)>(rough), 0.0, 1.0,
                                    tol, 1e-300);
        CHECK(std::abs(r.value - oracle) <= std::max(r.error, tol * oracle));
        CHECK(r.error <= tol * std::abs(r.value) * 1.01);
        if (prev_err < 1.0)
            CHECK(r.error <= prev_err);  // estimates shrink with the target
        prev_err = r.error;
    }
}
