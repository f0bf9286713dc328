#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affdecomp/interval.hpp"
#include "affdecomp/polynomial.hpp"
#include "affdecomp/rng.hpp"

namespace affdecomp {

enum class CurveKind { polynomial, moment, simple, generic };

// Evaluates one coordinate's derivative of a given order at t.
using DerivFn = std::function<double(int order, double t)>;

// Nondecreasing shift vector h defining the offspring curve
// gamma_h(t) = (1/m) sum_j gamma(t + h_j) on I_h = [a - h_1, b - h_m].
struct OffspringShift {
    std::vector<double> shifts;

    explicit OffspringShift(std::vector<double> h);
    int m() const { return static_cast<int>(shifts.size()); }
};

// A curve in C^N([a,b]; R^d) with evaluable derivatives. Immutable after
// construction; evaluation is pure and thread-safe.
class Curve {
public:
    static Curve from_polynomials(std::vector<Polynomial> coords, Interval domain,
                                  double smoothness, std::optional<double> cnorm = {},
                                  std::optional<double> cnorm_low = {},
                                  CurveKind kind = CurveKind::polynomial);
    static Curve polynomial_curve(const std::vector<std::vector<double>>& coeffs,
                                  Interval domain, double smoothness,
                                  std::optional<double> cnorm = {},
                                  std::optional<double> cnorm_low = {});
    // gamma(t) = (t, t^2, ..., t^d)
    static Curve moment_curve(int d, Interval domain,
                              std::optional<double> smoothness = {},
                              std::optional<double> cnorm = {});
    // gamma(t) = (t, t^2, ..., t^{d-1}, phi(t))
    static Curve simple_curve(int d, Interval domain, Polynomial phi,
                              double smoothness, std::optional<double> cnorm = {});
    static Curve simple_curve(int d, Interval domain, DerivFn phi, int phi_max_order,
                              double smoothness, double cnorm,
                              std::optional<double> cnorm_low = {});
    static Curve generic_curve(std::vector<DerivFn> coords, int max_order,
                               Interval domain, double smoothness, double cnorm,
                               std::optional<double> cnorm_low = {});

    CurveKind kind() const { return kind_; }
    int dim() const { return d_; }
    const Interval& domain() const { return domain_; }
    double smoothness() const { return smoothness_; }
    // declared C^N bound
    double cnorm() const { return cnorm_; }
    // declared C^d bound (<= cnorm)
    double cnorm_low() const { return cnorm_low_; }

    int max_order() const { return max_order_; }
    bool polynomial_backed() const { return !poly_.empty(); }
    const Polynomial& coordinate_poly(int i) const;

    double eval_coord(int coord, int order, double t) const;
    // gamma^{(order)}(t) as a d-vector
    std::vector<double> eval_derivative(int order, double t) const;

    // First n coordinates (1 <= n <= d).
    Curve truncate(int n) const;
    // Coordinates reordered as gamma_{perm[0]}, gamma_{perm[1]}, ... (0-based).
    Curve reorder(const std::vector<int>& perm) const;
    Curve with_domain(Interval sub) const;

    // Samples analytic derivatives against central finite differences and the
    // declared norm bounds; returns human-readable issues (empty when clean).
    std::vector<std::string> validate(CounterRng rng, int points = 100) const;

private:
    Curve() = default;
    void check_point(double t) const;
    void check_order(int order) const;

    CurveKind kind_ = CurveKind::generic;
    int d_ = 0;
    Interval domain_;
    double smoothness_ = 0.0;
    double cnorm_ = 0.0;
    double cnorm_low_ = 0.0;
    int max_order_ = 0;
    std::vector<Polynomial> poly_;
    std::vector<DerivFn> fns_;
};

// gamma_h; polynomial-backed curves stay polynomial-backed.
Curve offspring(const Curve& curve, const OffspringShift& shift);

// Taylor polynomial part P of degree floor(N) about `base`, plus the
// remainder bound |R^{(i)}(t)| <= |t-base|^{N-i} * cnorm.
struct TaylorSplit {
    double base;
    Curve poly_part;
    double smoothness;
    double cnorm;

    double remainder_bound(int order, double t) const;
};

TaylorSplit taylor_split(const Curve& curve, double base);

// Q(t) = 2^{k/j} (2/(b-a))^{(j+1)/2} P((b-a)(t+1)/2 + a) on [-1,1], using the
// first j coordinates of P. If |L_j^P| ~ 2^{-k} on [a,b] then |L_j^Q| ~ 1.
Curve rescale_to_unit(const Curve& poly_curve, int k, int j);

// JSON ingestion, e.g.
// {"kind":"polynomial","d":3,"domain":[0,1],"N":4.5,"cnorm":20.0,"coeffs":[[...],[...],[...]]}
// {"kind":"moment","d":3,"domain":[0,1]}
// {"kind":"simple","d":3,"domain":[0,1],"N":4.5,"cnorm":20.0,"phi_coeffs":[...]}
Curve load_curve_json(const std::string& text);
Curve load_curve_file(const std::string& path);
// Canonical JSON echo of the spec fields (polynomial-backed kinds only).
std::string curve_spec_json(const Curve& curve);

}  // namespace affdecomp
