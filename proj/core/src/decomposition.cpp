#include "affdecomp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "affdecomp/parallel.hpp"

namespace affdecomp {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

constexpr double kDegenerateCell = 1e-10;

}  // namespace

DecompositionConstants::DecompositionConstants(const Curve& curve)
    : d(curve.dim()), smoothness(curve.smoothness()), cnorm_d_(curve.cnorm_low()) {
    log_w = std::log2(factorial(d)) + d * std::log2(cnorm_d_);
}

double DecompositionConstants::a_j(int j) const {
    return -(std::log2(factorial(j)) + j * std::log2(cnorm_d_));
}

int DecompositionConstants::window_lo(int j) const {
    // half-open dyadic cells reach one step below A_j at exact boundaries
    return static_cast<int>(std::ceil(a_j(j) - 1.0 - 1e-9));
}

int DecompositionConstants::window_hi(int j, int kd) const {
    return static_cast<int>(std::floor(kd + a_j(j) + log_w + 1.0 + 1e-9));
}

int DecompositionConstants::window_size(int j, int kd) const {
    return std::max(0, window_hi(j, kd) - window_lo(j) + 1);
}

int decomposition_start_scale(const Curve& curve, int grid) {
    double sup = 0.0;
    for (double t : curve.domain().grid(grid)) sup = std::max(sup, torsion(curve, t));
    if (sup == 0.0) return std::numeric_limits<int>::max() / 2;  // tau vanishes identically
    return static_cast<int>(std::ceil(-std::log2(sup))) - 1;
}

DecompositionReport initial_decomposition(const Curve& curve, int k_d) {
    int d = curve.dim();
    DecompositionConstants consts(curve);
    double n_smooth = curve.smoothness();

    DecompositionReport report;
    report.k_d = k_d;

    std::vector<Permutation> sigmas = all_permutations(d);

    // Self-computed versions of the lemma constants: count from the
    // B_j 2^{k_j/(N-j)} cover bounds summed over each k_j window, length from
    // |I| per cover level times the window widths.
    double domain_len = curve.domain().length();
    for (const auto& sigma : sigmas) {
        double cb = levelset_count_constant(minor_levelset_fn(curve, sigma, d)) *
                    std::pow(2.0, static_cast<double>(k_d) / (n_smooth - d));
        double lb = domain_len;
        for (int j = 1; j < d; ++j) {
            double bj = levelset_count_constant(minor_levelset_fn(curve, sigma, j));
            double sum = 0.0;
            for (int kj = consts.window_lo(j); kj <= consts.window_hi(j, k_d); ++kj)
                sum += bj * std::pow(2.0, static_cast<double>(kj) / (n_smooth - j));
            cb *= sum;
            lb *= consts.window_size(j, k_d);
        }
        report.count_bound += cb;
        report.length_bound += lb;
    }

    if (k_d < decomposition_start_scale(curve)) {
        report.uncovered_measure = 0.0;
        return report;
    }

    IntervalSet kept_union;
    double dropped_measure = 0.0;

    for (const auto& sigma : sigmas) {
        std::vector<LevelSetFn> fns(static_cast<size_t>(d + 1));
        for (int j = 1; j <= d; ++j)
            fns[static_cast<size_t>(j)] = minor_levelset_fn(curve, sigma, j);

        std::vector<int> kvec(static_cast<size_t>(d), 0);
        kvec[static_cast<size_t>(d - 1)] = k_d;

        std::function<void(int, const Interval&)> descend = [&](int j,
                                                                const Interval& iv) {
            if (j == 0) {
                if (iv.length() < kDegenerateCell) {
                    dropped_measure += iv.length();
                    return;
                }
                if (kept_union.covers(iv)) return;
                DyadicCell cell;
                cell.interval = iv;
                cell.sigma = sigma;
                cell.k = kvec;
                cell.stage = CellStage::initial;
                report.cells.push_back(std::move(cell));
                kept_union.insert(iv);
                return;
            }
            for (int kj = consts.window_lo(j); kj <= consts.window_hi(j, k_d); ++kj) {
                kvec[static_cast<size_t>(j - 1)] = kj;
                for (const auto& sub :
                     levelset_cover(fns[static_cast<size_t>(j)], kj, iv,
                                    BandKind::half_open))
                    descend(j - 1, sub);
            }
        };

        for (const auto& top : levelset_cover(fns[static_cast<size_t>(d)], k_d,
                                              curve.domain(), BandKind::half_open))
            descend(d - 1, top);
    }

    sort_cells(report.cells);
    for (const auto& c : report.cells) report.total_length += c.interval.length();
    report.initial_count = report.count();

    // grid check of the covering property; misses feed uncovered_measure
    double band_lo = std::ldexp(1.0, -k_d - 1), band_hi = std::ldexp(1.0, -k_d);
    int misses = 0;
    const int grid_n = 10001;
    for (double t : curve.domain().grid(grid_n)) {
        double tau = torsion(curve, t);
        if (!(tau >= band_lo && tau < band_hi)) continue;
        bool inside = false;
        for (const auto& c : report.cells)
            if (c.interval.contains(t, 1e-12)) {
                inside = true;
                break;
            }
        if (!inside) ++misses;
    }
    report.uncovered_measure =
        dropped_measure + domain_len * static_cast<double>(misses) / grid_n;
    return report;
}

double shrink_cap(const Curve& curve, const std::vector<int>& k, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("shrink constant A must be positive");
    double n_smooth = curve.smoothness();
    double cap = 1.0;  // the secondary proposition needs b - a <= 1
    for (int j = 1; j <= static_cast<int>(k.size()); ++j) {
        double nmj = n_smooth - j;
        double cj = std::pow(A, 1.0 / nmj) * std::pow(curve.cnorm(), -j / nmj) *
                    std::pow(2.0, -static_cast<double>(k[static_cast<size_t>(j - 1)]) / nmj);
        cap = std::min(cap, cj);
    }
    return cap;
}

DecompositionReport shrink_cells(const DecompositionReport& report, const Curve& curve,
                                 double A) {
    DecompositionReport out;
    out.k_d = report.k_d;
    out.count_bound = report.count_bound;
    out.length_bound = report.length_bound;
    out.uncovered_measure = report.uncovered_measure;
    out.initial_count = report.initial_count;

    for (const auto& cell : report.cells) {
        double cap = shrink_cap(curve, cell.k, A);
        if (cap < 1e-12) throw std::runtime_error("shrink cap below resolution");
        double len = cell.interval.length();
        int pieces = std::max(1, static_cast<int>(std::ceil(len / cap - 1e-12)));
        for (int i = 0; i < pieces; ++i) {
            DyadicCell piece = cell;
            piece.stage = CellStage::shrunk;
            piece.interval = Interval(
                cell.interval.lo + len * static_cast<double>(i) / pieces,
                cell.interval.lo + len * static_cast<double>(i + 1) / pieces);
            out.cells.push_back(std::move(piece));
        }
    }
    sort_cells(out.cells);
    for (const auto& c : out.cells) out.total_length += c.interval.length();
    out.shrunk_count = out.count();

    // formula-side worst-case cap keeps the count bound self-contained
    DecompositionConstants consts(curve);
    std::vector<int> worst_k(static_cast<size_t>(curve.dim()));
    for (int j = 1; j <= curve.dim(); ++j)
        worst_k[static_cast<size_t>(j - 1)] =
            j == curve.dim() ? report.k_d : consts.window_hi(j, report.k_d);
    double worst_cap = shrink_cap(curve, worst_k, A);
    out.count_bound = report.count_bound + report.length_bound / worst_cap;
    return out;
}

std::vector<OffspringShift> HGridPolicy::shifts_for(double cell_length) const {
    std::vector<double> grid;
    int g = std::max(2, grid_points);
    for (int i = 0; i < g; ++i)
        grid.push_back(cell_length * static_cast<double>(i) / (g - 1));

    std::vector<OffspringShift> out;
    std::vector<double> current;
    std::function<void(int, int)> build = [&](int m, int start) {
        if (static_cast<int>(current.size()) == m) {
            out.emplace_back(current);
            return;
        }
        for (int i = start; i < g; ++i) {
            current.push_back(grid[static_cast<size_t>(i)]);
            build(m, i);
            current.pop_back();
        }
    };
    for (int m = 1; m <= m_max; ++m) build(m, 0);
    return out;
}

namespace {

std::optional<std::string> verify_offspring_bands(const Interval& iv, const Curve& curve,
                                                  const DyadicCell& cell,
                                                  const std::vector<OffspringShift>& hgrid,
                                                  const SecondaryOptions& opts) {
    Curve local = curve.with_domain(iv);
    int d = curve.dim();
    for (const auto& shift : hgrid) {
        double lo = iv.lo - shift.shifts.front();
        double hi = iv.hi - shift.shifts.back();
        if (hi < lo) continue;  // shift exceeds this subcell; vacuous here
        Curve child = offspring(local, shift);
        Interval shifted(lo, hi);
        for (int j = 1; j <= d; ++j) {
            double scale = std::ldexp(1.0, -cell.k[static_cast<size_t>(j - 1)]);
            double band_lo = opts.comparability_lo * scale;
            double band_hi = opts.comparability_hi * scale;
            for (double t : shifted.grid(opts.samples + 2)) {
                double v = std::abs(minor_value(child, cell.sigma, j, t));
                if (v < band_lo || v > band_hi) {
                    return "secondary verification failed: |L_" + std::to_string(j) +
                           "| = " + std::to_string(v) + " outside [" +
                           std::to_string(band_lo) + ", " + std::to_string(band_hi) +
                           "] at t = " + std::to_string(t) + " with m = " +
                           std::to_string(shift.m());
                }
            }
        }
    }
    return std::nullopt;
}

void secondary_recurse(const Interval& iv, const Curve& curve, const DyadicCell& cell,
                       const std::vector<OffspringShift>* fixed_grid,
                       const HGridPolicy* policy, const SecondaryOptions& opts,
                       int depth, std::vector<DyadicCell>& out) {
    std::vector<OffspringShift> local_grid;
    const std::vector<OffspringShift>* grid = fixed_grid;
    if (policy) {
        local_grid = policy->shifts_for(iv.length());
        grid = &local_grid;
    }
    auto failure = verify_offspring_bands(iv, curve, cell, *grid, opts);
    DyadicCell piece = cell;
    piece.interval = iv;
    piece.stage = CellStage::secondary;
    if (!failure) {
        piece.verified = true;
        out.push_back(std::move(piece));
        return;
    }
    if (depth >= opts.max_depth) {
        piece.verified = false;
        piece.note = *failure;
        out.push_back(std::move(piece));
        return;
    }
    double mid = iv.mid();
    secondary_recurse(Interval(iv.lo, mid), curve, cell, fixed_grid, policy, opts,
                      depth + 1, out);
    secondary_recurse(Interval(mid, iv.hi), curve, cell, fixed_grid, policy, opts,
                      depth + 1, out);
}

}  // namespace

std::vector<DyadicCell> secondary_decomposition(const DyadicCell& cell,
                                                const Curve& curve,
                                                const std::vector<OffspringShift>& hgrid,
                                                const SecondaryOptions& opts) {
    std::vector<DyadicCell> out;
    secondary_recurse(cell.interval, curve, cell, &hgrid, nullptr, opts, 0, out);
    return out;
}

std::vector<DyadicCell> secondary_decomposition(const DyadicCell& cell,
                                                const Curve& curve,
                                                const HGridPolicy& policy,
                                                const SecondaryOptions& opts) {
    std::vector<DyadicCell> out;
    secondary_recurse(cell.interval, curve, cell, nullptr, &policy, opts, 0, out);
    return out;
}

std::vector<DecompositionReport> full_decomposition(const Curve& curve, int k_min,
                                                    int k_max, double A,
                                                    const HGridPolicy& policy,
                                                    const SecondaryOptions& opts) {
    if (k_max < k_min) throw std::invalid_argument("empty scale range");
    int n_scales = k_max - k_min + 1;
    return parallel_map<DecompositionReport>(n_scales, [&](int idx) {
        int kd = k_min + idx;
        DecompositionReport report = initial_decomposition(curve, kd);
        report = shrink_cells(report, curve, A);
        std::vector<DyadicCell> final_cells;
        for (const auto& cell : report.cells)
            for (auto& piece : secondary_decomposition(cell, curve, policy, opts)) {
                if (!piece.verified) report.flagged.push_back(piece.note);
                final_cells.push_back(std::move(piece));
            }
        report.cells = std::move(final_cells);
        sort_cells(report.cells);
        report.total_length = 0.0;
        for (const auto& c : report.cells) report.total_length += c.interval.length();
        // bisection depth allowance on top of the shrink-stage bound
        report.count_bound *= std::ldexp(1.0, opts.max_depth);
        return report;
    });
}

void sort_cells(std::vector<DyadicCell>& cells) {
    std::sort(cells.begin(), cells.end(), [](const DyadicCell& a, const DyadicCell& b) {
        if (a.interval.lo != b.interval.lo) return a.interval.lo < b.interval.lo;
        if (a.interval.hi != b.interval.hi) return a.interval.hi < b.interval.hi;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.k < b.k;
    });
}

}  // namespace affdecomp
