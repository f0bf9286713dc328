#include "affdecomp/levelset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace affdecomp {

double LevelSetFn::oscillation_bound(double u, double v) const {
    double len = v - u;
    if (len <= 0.0) return 0.0;
    double holder = holder_norm * std::pow(len, std::min(1.0, 1.0 / alpha));
    if (deriv_sup) holder = std::min(holder, deriv_sup(u, v) * len);
    return holder;
}

LevelSetFn minor_levelset_fn(const Curve& curve, const Permutation& sigma, int j) {
    LevelSetFn f;
    double s = curve.smoothness() - j;  // f in C^{N-j}
    f.alpha = 1.0 / s;

    if (curve.polynomial_backed()) {
        Polynomial L = minor_polynomial(curve, sigma, j);
        Polynomial Lp = L.derivative();
        f.eval = [L](double t) { return L(t); };
        f.deriv_sup = [Lp](double u, double v) { return Lp.sup_bound(Interval(u, v)); };
        // exact C^{floor(s), s-floor(s)} bound from coefficient sums
        int m = static_cast<int>(std::floor(s));
        double beta = s - m;
        double norm = 0.0;
        Polynomial q = L;
        for (int ord = 0; ord <= m; ++ord) {
            norm = std::max(norm, q.sup_bound(curve.domain()));
            q = q.derivative();
        }
        if (beta > 0.0)
            norm = std::max(norm, q.sup_bound(curve.domain()) *
                                      std::pow(std::max(1.0, curve.domain().length()),
                                               1.0 - beta));
        f.holder_norm = std::max(norm, 1e-300);
        return f;
    }

    Curve base = curve;
    Permutation sig = sigma;
    f.eval = [base, sig, j](double t) { return minor_value(base, sig, j, t); };
    // declared-norm stand-in for ||L_{sigma,j}||_{C^{N-j}}
    f.holder_norm = std::max(curve.cnorm(), 1e-300);
    if (j + 1 <= curve.max_order()) {
        // sampled bound for |d/dt L_{sigma,j}| via column-wise differentiation
        f.deriv_sup = [base, sig, j](double u, double v) {
            Interval iv(u, v);
            double best = 0.0;
            for (double t : iv.grid(17)) {
                double sum = 0.0;
                for (int c = 0; c < j; ++c) {
                    std::vector<double> m(static_cast<size_t>(j) * j);
                    for (int r = 0; r < j; ++r)
                        for (int cc = 0; cc < j; ++cc) {
                            int order = (cc == c) ? cc + 2 : cc + 1;
                            m[static_cast<size_t>(r) * j + cc] =
                                base.eval_coord(sig[static_cast<size_t>(r)], order, t);
                        }
                    sum += std::abs(det_dense(m, j));
                }
                best = std::max(best, sum);
            }
            return 1.5 * best;  // sampled estimate with headroom
        };
    }
    return f;
}

double levelset_count_constant(const LevelSetFn& f) {
    return std::pow(f.holder_norm, f.alpha) *
           std::pow(4.0, 1.0 / f.alpha + f.alpha + 4.0);
}

namespace {

struct CoverContext {
    const LevelSetFn* f;
    double lo, hi;      // target band [2^{-k-1}, 2^{-k}]
    double osc_target;  // 2^{-k-3}
    BandKind band;
    double min_len;
    std::vector<Interval>* kept;
};

void cover_recurse(const CoverContext& ctx, double u, double v) {
    double osc = ctx.f->oscillation_bound(u, v);
    double mid = 0.5 * (u + v);
    double val = std::abs(ctx.f->eval(mid));

    // certainly outside the band: prune without refining
    if (val + osc < ctx.lo) return;
    if (ctx.band == BandKind::closed ? (val - osc > ctx.hi) : (val - osc >= ctx.hi))
        return;

    if (osc <= ctx.osc_target) {
        if (!ctx.kept->empty() && std::abs(ctx.kept->back().hi - u) < 1e-15 * std::max(1.0, std::abs(u)))
            ctx.kept->back().hi = v;  // merge with the adjacent kept piece
        else
            ctx.kept->push_back(Interval(u, v));
        return;
    }
    if (v - u < ctx.min_len)
        throw std::runtime_error(
            "oscillation budget exhausted: piece [" + std::to_string(u) + ", " +
            std::to_string(v) + "] oscillation bound " + std::to_string(osc) +
            " exceeds " + std::to_string(ctx.osc_target));
    cover_recurse(ctx, u, mid);
    cover_recurse(ctx, mid, v);
}

}  // namespace

std::vector<Interval> levelset_cover(const LevelSetFn& f, int k, const Interval& domain,
                                     BandKind band) {
    if (!(f.holder_norm > 0.0)) throw std::invalid_argument("holder norm must be positive");
    if (!(f.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    std::vector<Interval> kept;
    if (domain.length() == 0.0) {
        double val = std::abs(f.eval(domain.mid()));
        double lo = std::ldexp(1.0, -k - 1), hi = std::ldexp(1.0, -k);
        bool in = band == BandKind::closed ? (val >= lo && val <= hi)
                                           : (val >= lo && val < hi);
        if (in) kept.push_back(domain);
        return kept;
    }
    CoverContext ctx;
    ctx.f = &f;
    ctx.lo = std::ldexp(1.0, -k - 1);
    ctx.hi = std::ldexp(1.0, -k);
    ctx.osc_target = std::ldexp(1.0, -k - 3);
    ctx.band = band;
    ctx.min_len = domain.length() * std::ldexp(1.0, -48);
    ctx.kept = &kept;
    cover_recurse(ctx, domain.lo, domain.hi);
    return kept;
}

}  // namespace affdecomp
