#pragma once

#include <vector>

#include "affdecomp/interval.hpp"

namespace affdecomp {

// Univariate polynomial stored as coefficients in the monomial basis centered
// at `center`: p(t) = sum_i coeffs[i] * (t - center)^i. Centering at the
// working interval's midpoint keeps coefficient magnitudes balanced on the
// short intervals the decomposition produces.
class Polynomial {
public:
    Polynomial() : center_(0.0), coeffs_{0.0} {}
    Polynomial(std::vector<double> coeffs, double center = 0.0);

    static Polynomial constant(double c) { return Polynomial({c}); }
    // p(t) = t
    static Polynomial identity() { return Polynomial({0.0, 1.0}); }
    // t^n
    static Polynomial monomial(int n);

    double center() const { return center_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    double operator()(double t) const;
    // order-th derivative evaluated at t (0 for order > degree)
    double derivative_at(double t, int order) const;

    Polynomial derivative() const;
    Polynomial recentered(double new_center) const;
    // coefficients in the plain monomial basis (center 0)
    std::vector<double> standard_coeffs() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(double s) const;
    Polynomial& operator+=(const Polynomial& other) { return *this = *this + other; }

    // q(t) = p(a*t + b), centered so the basis stays balanced on the image
    Polynomial compose_affine(double a, double b) const;
    // p(t + h)
    Polynomial shifted_arg(double h) const { return compose_affine(1.0, h); }

    // Rigorous sup bound on |p| over [lo, hi]: sum |c_i| r^i with
    // r = max distance from the basis center to an endpoint.
    double sup_bound(const Interval& iv) const;

private:
    void trim();

    double center_;
    std::vector<double> coeffs_;
};

}  // namespace affdecomp
