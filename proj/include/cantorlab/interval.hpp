#pragma once

#include <vector>

namespace cantorlab {

// Closed interval [lo, hi]; kept as a plain value type.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o, double tol = 0.0) const {
        return lo - tol <= o.lo && o.hi <= hi + tol;
    }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

Interval hull(const Interval& a, const Interval& b);

// Interval spanned by two values in either order.
inline Interval hull_of(double a, double b) {
    return a <= b ? Interval{a, b} : Interval{b, a};
}

// Merge a set of closed intervals into disjoint ones, treating gaps smaller
// than `gap_tol` as connected. Result is sorted by lo.
std::vector<Interval> merge_union(std::vector<Interval> parts, double gap_tol = 0.0);

// Total Lebesgue measure of the union.
double union_measure(const std::vector<Interval>& parts);

} // namespace cantorlab
