#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affdecomp/curve.hpp"
#include "affdecomp/interval.hpp"
#include "affdecomp/levelset.hpp"
#include "affdecomp/minors.hpp"

namespace affdecomp {

enum class CellStage { initial, shrunk, secondary };

// An interval on which every minor |L_{sigma,j}| is pinned to its dyadic
// value: 2^{-k_j-2} <= |L_{sigma,j}| <= 2^{-k_j+1} throughout the cell.
struct DyadicCell {
    Interval interval;
    Permutation sigma;
    std::vector<int> k;  // k[j-1] for order j; k.back() is the torsion scale
    CellStage stage = CellStage::initial;
    bool verified = true;
    std::string note;
};

struct DecompositionReport {
    int k_d = 0;
    std::vector<DyadicCell> cells;
    double count_bound = 0.0;
    double total_length = 0.0;
    double length_bound = 0.0;
    double uncovered_measure = 0.0;
    bool zero_set_excluded = true;  // {tau = 0} is never covered, by construction
    int initial_count = 0;
    int shrunk_count = 0;
    std::vector<std::string> flagged;  // secondary verification failures

    int count() const { return static_cast<int>(cells.size()); }
};

// Per-curve constants of the decomposition lemmas, self-computed so that the
// reported bounds are concrete numbers rather than abstract C's.
struct DecompositionConstants {
    int d = 0;
    double smoothness = 0.0;
    double log_w = 0.0;  // log2(d! cnorm_d^d)

    explicit DecompositionConstants(const Curve& curve);

    double a_j(int j) const;          // A_j = -log2(j! cnorm_d^j)
    int window_lo(int j) const;       // smallest admissible k_j
    int window_hi(int j, int kd) const;
    int window_size(int j, int kd) const;

private:
    double cnorm_d_ = 0.0;
};

// C_gamma = ceil(-log2 sup_grid tau) - 1; scales below this have empty bands.
int decomposition_start_scale(const Curve& curve, int grid = 4096);

// Nested level-set covers over all sigma in S_d and the admissible k_j
// windows; cells fully covered by earlier cells at the same scale are
// dropped. Scales below the start scale give an empty report.
DecompositionReport initial_decomposition(const Curve& curve, int k_d);

// Equal splitting of every cell to length at most
// min(1, min_j A^{1/(N-j)} cnorm^{-j/(N-j)} 2^{-k_j/(N-j)}).
DecompositionReport shrink_cells(const DecompositionReport& report, const Curve& curve,
                                 double A);
double shrink_cap(const Curve& curve, const std::vector<int>& k, double A);

// Finite stand-in for the universal offspring quantifier.
struct HGridPolicy {
    int m_max = 3;
    int grid_points = 5;

    // all nondecreasing m-tuples, m <= m_max, over the dyadic grid
    // {0, L/(g-1), 2L/(g-1), ..., L}
    std::vector<OffspringShift> shifts_for(double cell_length) const;
};

struct SecondaryOptions {
    double comparability_lo = 0.125;  // c: accept c 2^{-k_j} <= |L_j| <= C 2^{-k_j}
    double comparability_hi = 8.0;
    int max_depth = 12;
    int samples = 64;
};

// Bisects the cell until every shift in the verification set satisfies the
// minor comparability bands for every truncation order, or flags the
// offending subcell at max depth. The policy overload regenerates the shift
// grid from each subcell's own length.
std::vector<DyadicCell> secondary_decomposition(const DyadicCell& cell,
                                                const Curve& curve,
                                                const std::vector<OffspringShift>& hgrid,
                                                const SecondaryOptions& opts = {});
std::vector<DyadicCell> secondary_decomposition(const DyadicCell& cell,
                                                const Curve& curve,
                                                const HGridPolicy& policy,
                                                const SecondaryOptions& opts = {});

// initial -> shrink -> secondary for every scale in [k_min, k_max], run as a
// parallel map over scales with a deterministic merge (cells sorted by left
// endpoint, then sigma).
std::vector<DecompositionReport> full_decomposition(const Curve& curve, int k_min,
                                                    int k_max, double A,
                                                    const HGridPolicy& policy,
                                                    const SecondaryOptions& opts = {});

void sort_cells(std::vector<DyadicCell>& cells);

}  // namespace affdecomp
