#include "cantorlab/interval.hpp"

#include <algorithm>

namespace cantorlab {

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

std::vector<Interval> merge_union(std::vector<Interval> parts, double gap_tol) {
    if (parts.empty()) return parts;
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) {
                  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    std::vector<Interval> out;
    out.push_back(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        Interval& last = out.back();
        if (parts[i].lo <= last.hi + gap_tol)
            last.hi = std::max(last.hi, parts[i].hi);
        else
            out.push_back(parts[i]);
    }
    return out;
}

double union_measure(const std::vector<Interval>& parts) {
    double total = 0.0;
    for (const Interval& iv : merge_union(parts)) total += iv.length();
    return total;
}

} // namespace cantorlab
