#pragma once

#include <vector>

#include "affdecomp/curve.hpp"
#include "affdecomp/polynomial.hpp"

namespace affdecomp {

// Permutations are 0-based: sigma[pos] is the coordinate placed in row pos.
using Permutation = std::vector<int>;

Permutation identity_permutation(int d);
std::vector<Permutation> all_permutations(int d);

// Determinant of a dense n x n matrix in row-major order. Cofactor expansion
// for n <= 4, partial-pivot elimination above that.
double det_dense(const std::vector<double>& m, int n);

// L_{sigma,j}(t): det of the j x j matrix with rows gamma_{sigma(1..j)} and
// columns gamma', ..., gamma^{(j)}.
double minor_value(const Curve& curve, const Permutation& sigma, int j, double t);

// tau(t) = |det[gamma'(t), ..., gamma^{(d)}(t)]| = |L_d(t)|, sigma-independent.
double torsion(const Curve& curve, double t);

// w_eps(t) = tau(t)^{2/(d(d+1)) + eps}
struct WeightParams {
    double epsilon = 0.0;

    double exponent(int d) const {
        return 2.0 / (static_cast<double>(d) * (d + 1)) + epsilon;
    }
};

double weight(const Curve& curve, const WeightParams& params, double t);

// L_{zeta_{i1}...zeta_{il}}(t): rows are the given distinct coordinates, in
// order, against columns zeta', ..., zeta^{(l)}. rows empty gives 1.
double generalized_minor(const Curve& curve, const std::vector<int>& rows, double t);

// Unique k with 2^{-k-1} <= v < 2^{-k}; boundary values fall in the lower
// cell. Requires v > 0.
int dyadic_index(double v);

struct PermutationSelection {
    Permutation sigma;
    std::vector<int> k;          // k[j-1] for |L_{sigma,j}| ~ 2^{-k_j}
    std::vector<double> minors;  // L_{sigma,j}(t), j = 1..d
};

// Greedy cofactor construction from the decomposition lemma: walking j+1 -> j,
// assign to position j+1 the coordinate whose cofactor term
// |gamma_i^{(j+1)}(t) * det M_{i,j+1}| is largest. The selected sigma
// satisfies |L_{sigma,j}(t)| >= j!/(d! cnorm_d^{d-j}) |L_d(t)| for every j.
PermutationSelection select_permutation(const Curve& curve, double t);

// L_{sigma,j} as an exact polynomial (polynomial-backed curves only); used
// for rigorous oscillation bounds in the level-set covers and as a test
// oracle.
Polynomial minor_polynomial(const Curve& curve, const Permutation& sigma, int j);

}  // namespace affdecomp
