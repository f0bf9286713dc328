#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace affdecomp {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double a, double b) : lo(a), hi(b) {
        if (!(std::isfinite(a) && std::isfinite(b)) || b < a)
            throw std::invalid_argument("invalid interval endpoints");
    }

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double t, double tol = 0.0) const {
        return t >= lo - tol && t <= hi + tol;
    }
    bool contains(const Interval& other, double tol = 0.0) const {
        return other.lo >= lo - tol && other.hi <= hi + tol;
    }

    // n interior-and-endpoint sample points, n >= 2 (or the midpoint for n < 2).
    std::vector<double> grid(int n) const {
        std::vector<double> pts;
        if (n < 2 || length() == 0.0) {
            pts.push_back(mid());
            return pts;
        }
        pts.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            pts.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
        return pts;
    }
};

// Sorted union of disjoint intervals; used to deduplicate overlapping cells.
class IntervalSet {
public:
    void insert(const Interval& iv) {
        if (iv.length() < 0) return;
        parts_.push_back(iv);
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Interval> merged;
        for (const auto& p : parts_) {
            if (!merged.empty() && p.lo <= merged.back().hi + 1e-15) {
                merged.back().hi = std::max(merged.back().hi, p.hi);
            } else {
                merged.push_back(p);
            }
        }
        parts_ = std::move(merged);
    }

    bool covers(const Interval& iv, double tol = 1e-12) const {
        double slack = tol * std::max(1.0, iv.length());
        for (const auto& p : parts_)
            if (iv.lo >= p.lo - slack && iv.hi <= p.hi + slack) return true;
        return false;
    }

    const std::vector<Interval>& parts() const { return parts_; }

private:
    std::vector<Interval> parts_;
};

}  // namespace affdecomp
