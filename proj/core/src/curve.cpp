#include "affdecomp/curve.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "json_canon.hpp"

namespace affdecomp {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Entrywise sup bound over derivative orders 0..maxorder.
double poly_sup_norm(const std::vector<Polynomial>& coords, const Interval& dom,
                     int maxorder) {
    double best = 0.0;
    for (const auto& p : coords) {
        Polynomial q = p;
        for (int ord = 0; ord <= maxorder; ++ord) {
            best = std::max(best, q.sup_bound(dom));
            q = q.derivative();
        }
    }
    return best;
}

// C^N = C^{floor(N), N - floor(N)} norm bound from exact coefficient sums.
double poly_holder_norm(const std::vector<Polynomial>& coords, const Interval& dom,
                        double smoothness) {
    int m = static_cast<int>(std::floor(smoothness));
    double beta = smoothness - m;
    double norm = poly_sup_norm(coords, dom, m);
    if (beta > 0.0) {
        double semi = 0.0;
        for (const auto& p : coords) {
            Polynomial q = p;
            for (int ord = 0; ord <= m; ++ord) q = q.derivative();
            semi = std::max(semi,
                            q.sup_bound(dom) * std::pow(std::max(1.0, dom.length()), 1.0 - beta));
        }
        norm = std::max(norm, semi);
    }
    return norm;
}

}  // namespace

OffspringShift::OffspringShift(std::vector<double> h) : shifts(std::move(h)) {
    if (shifts.empty()) throw std::invalid_argument("offspring shift needs m >= 1");
    if (shifts.front() < 0.0)
        throw std::invalid_argument("offspring shifts must satisfy h_1 >= 0");
    for (size_t i = 1; i < shifts.size(); ++i)
        if (shifts[i] < shifts[i - 1])
            throw std::invalid_argument("offspring shifts must be nondecreasing");
}

Curve Curve::from_polynomials(std::vector<Polynomial> coords, Interval domain,
                              double smoothness, std::optional<double> cnorm,
                              std::optional<double> cnorm_low, CurveKind kind) {
    Curve c;
    c.kind_ = kind;
    c.d_ = static_cast<int>(coords.size());
    c.domain_ = domain;
    c.smoothness_ = smoothness;
    c.poly_.reserve(coords.size());
    for (auto& p : coords) c.poly_.push_back(p.recentered(domain.mid()));
    c.max_order_ = 64;
    c.cnorm_ = cnorm ? *cnorm : poly_holder_norm(c.poly_, domain, smoothness);
    c.cnorm_low_ = cnorm_low ? *cnorm_low
                             : std::min(c.cnorm_, poly_sup_norm(c.poly_, domain, c.d_));
    if (!(c.cnorm_ > 0.0) || !std::isfinite(c.cnorm_))
        throw std::invalid_argument("curve C^N bound must be finite and positive");
    return c;
}

Curve Curve::polynomial_curve(const std::vector<std::vector<double>>& coeffs,
                              Interval domain, double smoothness,
                              std::optional<double> cnorm,
                              std::optional<double> cnorm_low) {
    int d = static_cast<int>(coeffs.size());
    if (d < 2 || d > 6) throw std::invalid_argument("dimension must be in [2, 6]");
    if (!(smoothness > d))
        throw std::invalid_argument("smoothness N must exceed the dimension d");
    std::vector<Polynomial> coords;
    coords.reserve(coeffs.size());
    for (const auto& c : coeffs) coords.emplace_back(c);
    return from_polynomials(std::move(coords), domain, smoothness, cnorm, cnorm_low,
                            CurveKind::polynomial);
}

Curve Curve::moment_curve(int d, Interval domain, std::optional<double> smoothness,
                          std::optional<double> cnorm) {
    if (d < 2 || d > 6) throw std::invalid_argument("dimension must be in [2, 6]");
    double n = smoothness ? *smoothness : d + 1.5;
    if (!(n > d))
        throw std::invalid_argument("smoothness N must exceed the dimension d");
    std::vector<Polynomial> coords;
    for (int i = 1; i <= d; ++i) coords.push_back(Polynomial::monomial(i));
    return from_polynomials(std::move(coords), domain, n, cnorm, {}, CurveKind::moment);
}

Curve Curve::simple_curve(int d, Interval domain, Polynomial phi, double smoothness,
                          std::optional<double> cnorm) {
    if (d < 2 || d > 6) throw std::invalid_argument("dimension must be in [2, 6]");
    if (!(smoothness > d))
        throw std::invalid_argument("smoothness N must exceed the dimension d");
    std::vector<Polynomial> coords;
    for (int i = 1; i < d; ++i) coords.push_back(Polynomial::monomial(i));
    coords.push_back(std::move(phi));
    return from_polynomials(std::move(coords), domain, smoothness, cnorm, {},
                            CurveKind::simple);
}

Curve Curve::simple_curve(int d, Interval domain, DerivFn phi, int phi_max_order,
                          double smoothness, double cnorm,
                          std::optional<double> cnorm_low) {
    if (d < 2 || d > 6) throw std::invalid_argument("dimension must be in [2, 6]");
    if (!(smoothness > d))
        throw std::invalid_argument("smoothness N must exceed the dimension d");
    std::vector<DerivFn> fns;
    for (int i = 1; i < d; ++i) {
        fns.push_back([i](int order, double t) {
            if (order > i) return 0.0;
            double fall = 1.0;
            for (int r = 0; r < order; ++r) fall *= (i - r);
            return fall * std::pow(t, i - order);
        });
    }
    fns.push_back(std::move(phi));
    Curve c;
    c.kind_ = CurveKind::simple;
    c.d_ = d;
    c.domain_ = domain;
    c.smoothness_ = smoothness;
    c.cnorm_ = cnorm;
    c.cnorm_low_ = cnorm_low ? *cnorm_low : cnorm;
    c.max_order_ = phi_max_order;
    c.fns_ = std::move(fns);
    return c;
}

Curve Curve::generic_curve(std::vector<DerivFn> coords, int max_order, Interval domain,
                           double smoothness, double cnorm,
                           std::optional<double> cnorm_low) {
    int d = static_cast<int>(coords.size());
    if (d < 2 || d > 6) throw std::invalid_argument("dimension must be in [2, 6]");
    if (!(smoothness > d))
        throw std::invalid_argument("smoothness N must exceed the dimension d");
    if (max_order < d)
        throw std::invalid_argument("generic curve must supply derivatives up to order d");
    Curve c;
    c.kind_ = CurveKind::generic;
    c.d_ = d;
    c.domain_ = domain;
    c.smoothness_ = smoothness;
    c.cnorm_ = cnorm;
    c.cnorm_low_ = cnorm_low ? *cnorm_low : cnorm;
    c.max_order_ = max_order;
    c.fns_ = std::move(coords);
    return c;
}

const Polynomial& Curve::coordinate_poly(int i) const {
    if (!polynomial_backed())
        throw std::logic_error("curve is not polynomial-backed");
    return poly_.at(static_cast<size_t>(i));
}

void Curve::check_point(double t) const {
    double tol = 1e-12 * std::max(1.0, std::abs(domain_.lo) + std::abs(domain_.hi));
    if (!domain_.contains(t, tol)) throw std::domain_error("t outside curve domain");
}

void Curve::check_order(int order) const {
    if (order < 0 || order > max_order_)
        throw std::invalid_argument("derivative order unsupported");
}

double Curve::eval_coord(int coord, int order, double t) const {
    check_point(t);
    check_order(order);
    if (polynomial_backed()) return poly_[static_cast<size_t>(coord)].derivative_at(t, order);
    return fns_[static_cast<size_t>(coord)](order, t);
}

std::vector<double> Curve::eval_derivative(int order, double t) const {
    std::vector<double> out(static_cast<size_t>(d_));
    for (int i = 0; i < d_; ++i) out[static_cast<size_t>(i)] = eval_coord(i, order, t);
    return out;
}

Curve Curve::truncate(int n) const {
    if (n < 1 || n > d_) throw std::invalid_argument("bad truncation dimension");
    if (n == d_) return *this;
    Curve c = *this;
    c.d_ = n;
    if (polynomial_backed())
        c.poly_.assign(poly_.begin(), poly_.begin() + n);
    else
        c.fns_.assign(fns_.begin(), fns_.begin() + n);
    return c;
}

Curve Curve::reorder(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != d_)
        throw std::invalid_argument("permutation size mismatch");
    Curve c = *this;
    if (polynomial_backed()) {
        c.poly_.clear();
        for (int i : perm) c.poly_.push_back(poly_.at(static_cast<size_t>(i)));
        if (kind_ == CurveKind::moment || kind_ == CurveKind::simple)
            c.kind_ = CurveKind::polynomial;
    } else {
        c.fns_.clear();
        for (int i : perm) c.fns_.push_back(fns_.at(static_cast<size_t>(i)));
        c.kind_ = CurveKind::generic;
    }
    return c;
}

Curve Curve::with_domain(Interval sub) const {
    double tol = 1e-12 * std::max(1.0, domain_.length());
    if (!domain_.contains(sub, tol))
        throw std::invalid_argument("subdomain escapes the curve domain");
    Curve c = *this;
    c.domain_ = sub;
    if (polynomial_backed())
        for (auto& p : c.poly_) p = p.recentered(sub.mid());
    return c;
}

std::vector<std::string> Curve::validate(CounterRng rng, int points) const {
    std::vector<std::string> issues;
    double len = domain_.length();
    double h = std::max(1e-5, 1e-4 * len);
    for (int s = 0; s < points; ++s) {
        double t = rng.uniform(domain_.lo + 2 * h, domain_.hi - 2 * h);
        for (int ord = 0; ord <= std::min(d_, max_order_); ++ord) {
            for (int i = 0; i < d_; ++i) {
                double v = eval_coord(i, ord, t);
                if (!std::isfinite(v)) {
                    issues.push_back("non-finite derivative value at order " +
                                     std::to_string(ord));
                    continue;
                }
                if (ord <= d_ && std::abs(v) > cnorm_low_ * (1.0 + 1e-9))
                    issues.push_back("declared C^d bound violated at order " +
                                     std::to_string(ord) + ", t = " + std::to_string(t));
                if (ord >= 1 && polynomial_backed()) {
                    // five-point central difference of the (ord-1)-th derivative
                    double fd = (eval_coord(i, ord - 1, t - 2 * h) -
                                 8 * eval_coord(i, ord - 1, t - h) +
                                 8 * eval_coord(i, ord - 1, t + h) -
                                 eval_coord(i, ord - 1, t + 2 * h)) /
                                (12 * h);
                    double scale = std::max({1.0, std::abs(v), std::abs(fd)});
                    if (std::abs(fd - v) > 1e-6 * scale)
                        issues.push_back("analytic/finite-difference mismatch at order " +
                                         std::to_string(ord));
                }
            }
        }
    }
    return issues;
}

Curve offspring(const Curve& curve, const OffspringShift& shift) {
    const auto& h = shift.shifts;
    double lo = curve.domain().lo - h.front();
    double hi = curve.domain().hi - h.back();
    if (hi < lo) throw std::runtime_error("degenerate offspring domain");
    bool all_zero = true;
    for (double x : h) all_zero &= (x == 0.0);
    if (all_zero && shift.m() == 1) return curve;

    Interval dom(lo, hi);
    double inv_m = 1.0 / shift.m();
    if (curve.polynomial_backed()) {
        std::vector<Polynomial> coords;
        for (int i = 0; i < curve.dim(); ++i) {
            Polynomial acc;
            for (double hj : h) acc += curve.coordinate_poly(i).shifted_arg(hj);
            coords.push_back(acc * inv_m);
        }
        return Curve::from_polynomials(std::move(coords), dom, curve.smoothness(),
                                       curve.cnorm(), curve.cnorm_low(),
                                       CurveKind::polynomial);
    }
    std::vector<DerivFn> fns;
    for (int i = 0; i < curve.dim(); ++i) {
        Curve base = curve;
        std::vector<double> hs = h;
        fns.push_back([base, hs, inv_m, i](int order, double t) {
            double acc = 0.0;
            for (double hj : hs) acc += base.eval_coord(i, order, t + hj);
            return acc * inv_m;
        });
    }
    return Curve::generic_curve(std::move(fns), curve.max_order(), dom,
                                curve.smoothness(), curve.cnorm(), curve.cnorm_low());
}

double TaylorSplit::remainder_bound(int order, double t) const {
    return std::pow(std::abs(t - base), smoothness - order) * cnorm;
}

TaylorSplit taylor_split(const Curve& curve, double base) {
    if (!curve.domain().contains(base, 1e-12))
        throw std::domain_error("t outside curve domain");
    int m = static_cast<int>(std::floor(curve.smoothness()));
    if (m > curve.max_order())
        throw std::invalid_argument("derivative order unsupported");
    std::vector<Polynomial> coords;
    for (int i = 0; i < curve.dim(); ++i) {
        std::vector<double> c(static_cast<size_t>(m) + 1);
        for (int k = 0; k <= m; ++k)
            c[static_cast<size_t>(k)] = curve.eval_coord(i, k, base) / factorial(k);
        coords.emplace_back(std::move(c), base);
    }
    Curve poly = Curve::from_polynomials(std::move(coords), curve.domain(),
                                         curve.smoothness(), curve.cnorm(),
                                         curve.cnorm_low(), CurveKind::polynomial);
    return TaylorSplit{base, std::move(poly), curve.smoothness(), curve.cnorm()};
}

Curve rescale_to_unit(const Curve& poly_curve, int k, int j) {
    if (!poly_curve.polynomial_backed())
        throw std::invalid_argument("rescale_to_unit needs a polynomial curve");
    if (j < 1 || j > poly_curve.dim())
        throw std::invalid_argument("bad minor order for rescaling");
    double a = poly_curve.domain().lo, b = poly_curve.domain().hi;
    if (!(b > a)) throw std::invalid_argument("degenerate interval");
    double scale = std::pow(2.0, static_cast<double>(k) / j) *
                   std::pow(2.0 / (b - a), 0.5 * (j + 1));
    double alpha = 0.5 * (b - a), beta = 0.5 * (a + b);
    std::vector<Polynomial> coords;
    for (int i = 0; i < j; ++i)
        coords.push_back(poly_curve.coordinate_poly(i).compose_affine(alpha, beta) * scale);
    return Curve::from_polynomials(std::move(coords), Interval(-1.0, 1.0),
                                   poly_curve.smoothness(), {}, {},
                                   CurveKind::polynomial);
}

namespace {

const char* kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::polynomial: return "polynomial";
        case CurveKind::moment: return "moment";
        case CurveKind::simple: return "simple";
        default: return "generic";
    }
}

}  // namespace

Curve load_curve_json(const std::string& text) {
    nlohmann::json spec;
    try {
        spec = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("curve spec parse error: ") + e.what());
    }
    if (!spec.contains("kind")) throw std::invalid_argument("curve spec missing 'kind'");
    std::string kind = spec.at("kind").get<std::string>();
    if (!spec.contains("domain") || !spec.at("domain").is_array() ||
        spec.at("domain").size() != 2)
        throw std::invalid_argument("curve spec needs 'domain': [a, b]");
    Interval dom(spec.at("domain")[0].get<double>(), spec.at("domain")[1].get<double>());

    std::optional<double> cnorm, cnorm_low;
    if (spec.contains("cnorm")) cnorm = spec.at("cnorm").get<double>();
    if (spec.contains("cnorm_d")) cnorm_low = spec.at("cnorm_d").get<double>();

    if (kind == "moment") {
        int d = spec.at("d").get<int>();
        std::optional<double> n;
        if (spec.contains("N")) n = spec.at("N").get<double>();
        return Curve::moment_curve(d, dom, n, cnorm);
    }
    if (kind == "polynomial") {
        double n = spec.at("N").get<double>();
        auto coeffs = spec.at("coeffs").get<std::vector<std::vector<double>>>();
        if (spec.contains("d") &&
            spec.at("d").get<int>() != static_cast<int>(coeffs.size()))
            throw std::invalid_argument("curve spec 'd' disagrees with 'coeffs' size");
        return Curve::polynomial_curve(coeffs, dom, n, cnorm, cnorm_low);
    }
    if (kind == "simple") {
        int d = spec.at("d").get<int>();
        double n = spec.at("N").get<double>();
        auto phi = spec.at("phi_coeffs").get<std::vector<double>>();
        return Curve::simple_curve(d, dom, Polynomial(phi), n, cnorm);
    }
    throw std::invalid_argument("unsupported curve kind '" + kind + "'");
}

Curve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_curve_json(ss.str());
}

std::string curve_spec_json(const Curve& curve) {
    nlohmann::json j;
    j["kind"] = kind_name(curve.kind());
    j["d"] = curve.dim();
    j["domain"] = {curve.domain().lo, curve.domain().hi};
    j["N"] = curve.smoothness();
    j["cnorm"] = curve.cnorm();
    j["cnorm_d"] = curve.cnorm_low();
    if (curve.polynomial_backed() && curve.kind() != CurveKind::moment) {
        std::vector<std::vector<double>> coeffs;
        for (int i = 0; i < curve.dim(); ++i)
            coeffs.push_back(curve.coordinate_poly(i).standard_coeffs());
        j["coeffs"] = coeffs;
    }
    return canonical_json_dump(j);
}

}  // namespace affdecomp
