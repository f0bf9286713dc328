#include "affdecomp/polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace affdecomp {

Polynomial::Polynomial(std::vector<double> coeffs, double center)
    : center_(center), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim();
}

Polynomial Polynomial::monomial(int n) {
    if (n < 0) throw std::invalid_argument("negative monomial degree");
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    c.back() = 1.0;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
    double x = t - center_;
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

double Polynomial::derivative_at(double t, int order) const {
    if (order < 0) throw std::invalid_argument("negative derivative order");
    if (order > degree()) return 0.0;
    double x = t - center_;
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > static_cast<size_t>(order);) {
        double fall = 1.0;
        for (int r = 0; r < order; ++r) fall *= static_cast<double>(i - r);
        // Horner over the shifted coefficient sequence
        acc = acc * x + coeffs_[i] * fall;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial({0.0}, center_);
    std::vector<double> c(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(c), center_);
}

Polynomial Polynomial::recentered(double new_center) const {
    // Taylor shift: repeated synthetic division by (x - delta)
    double delta = new_center - center_;
    if (delta == 0.0) return *this;
    std::vector<double> c = coeffs_;
    size_t n = c.size();
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 1; j > i; --j) c[j - 1] += delta * c[j];
    return Polynomial(std::move(c), new_center);
}

std::vector<double> Polynomial::standard_coeffs() const {
    return recentered(0.0).coeffs();
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial rhs = other.recentered(center_);
    std::vector<double> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] += rhs.coeffs_[i];
    return Polynomial(std::move(c), center_);
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial rhs = other.recentered(center_);
    std::vector<double> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(c), center_);
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> c = coeffs_;
    for (double& x : c) x *= s;
    return Polynomial(std::move(c), center_);
}

Polynomial Polynomial::compose_affine(double a, double b) const {
    // p(a*t + b) with the new basis centered where a*t + b == center_
    if (a == 0.0) return Polynomial({(*this)(b)});
    double new_center = (center_ - b) / a;
    // (a*t + b - center_) = a * (t - new_center)
    std::vector<double> c = coeffs_;
    double pw = 1.0;
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] *= pw;
        pw *= a;
    }
    return Polynomial(std::move(c), new_center);
}

double Polynomial::sup_bound(const Interval& iv) const {
    double r = std::max(std::abs(iv.lo - center_), std::abs(iv.hi - center_));
    double acc = 0.0;
    double pw = 1.0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        acc += std::abs(coeffs_[i]) * pw;
        pw *= r;
    }
    return acc;
}

}  // namespace affdecomp
