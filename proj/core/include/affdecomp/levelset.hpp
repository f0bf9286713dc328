#pragma once

#include <functional>
#include <optional>

#include "affdecomp/curve.hpp"
#include "affdecomp/interval.hpp"
#include "affdecomp/minors.hpp"

namespace affdecomp {

// A scalar function f in C^{1/alpha} together with the data needed to bound
// its oscillation on a piece: the declared Holder norm and, when available,
// a rigorous sup bound for |f'| on a subinterval.
struct LevelSetFn {
    std::function<double(double)> eval;
    // upper bound for sup |f'| on [u, v]; may be empty
    std::function<double(double, double)> deriv_sup;
    double holder_norm = 0.0;
    double alpha = 0.0;  // f in C^{1/alpha}

    // min of the C^1 bound and the Holder bound on [u, v]
    double oscillation_bound(double u, double v) const;
};

// Wraps |L_{sigma,j}| of a curve for covering. Polynomial-backed curves get
// exact coefficient-sum bounds; otherwise the declared C^N norm of the curve
// stands in for the minor's Holder norm and the C^1 bound is sampled when
// order j+1 derivatives exist.
LevelSetFn minor_levelset_fn(const Curve& curve, const Permutation& sigma, int j);

enum class BandKind {
    closed,    // target {2^{-k-1} <= |f| <= 2^{-k}}, the covering lemma as stated
    half_open  // target {2^{-k-1} <= |f| < 2^{-k}}, the dyadic-partition variant
};

// Number-of-intervals constant B_alpha = ||f||^alpha * 4^{1/alpha + alpha + 4}.
double levelset_count_constant(const LevelSetFn& f);

// Cover of the k-th level band of |f| by disjoint intervals on which
// 2^{-k-2} <= |f| <= 2^{-k+1}. Subdivides until each piece's oscillation
// bound is below 2^{-k-3}, keeps pieces that may meet the target, merges
// adjacent keeps. Pieces certifiably outside the band are pruned without
// refinement. Returns an empty list when the band is empty; throws
// "oscillation budget exhausted" if subdivision stalls.
std::vector<Interval> levelset_cover(const LevelSetFn& f, int k, const Interval& domain,
                                     BandKind band = BandKind::closed);

}  // namespace affdecomp
