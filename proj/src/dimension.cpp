#include "cantorlab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cantorlab/errors.hpp"

namespace cantorlab {

double solve_pressure_root(const std::vector<double>& weights) {
    if (weights.empty()) throw InvalidSystem("pressure sum needs at least one weight");
    std::vector<double> logs;
    logs.reserve(weights.size());
    for (double w : weights) {
        if (!(w > 1.0)) throw InvalidSystem("pressure weights must exceed 1");
        logs.push_back(std::log(w));
    }
    auto sum_at = [&](double d) {
        double s = 0.0;
        for (double lw : logs) s += std::exp(-d * lw);
        return s;
    };
    double lo = 0.0, hi = 2.0;
    while (sum_at(hi) > 1.0) {
        hi *= 2.0;
        if (hi > 64.0) throw InvalidSystem("pressure root not bracketed below d = 64");
    }
    // sum_at(lo) = #weights >= 1; equality only for a single weight, where
    // the root is still approached from above.
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (sum_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

DimensionBracket pressure_dimension(const CantorSystem& sys, int depth,
                                    const EnumBudget& budget) {
    if (depth < 1) throw BudgetExceeded("pressure depth must be at least 1");
    if (depth > budget.max_depth) throw BudgetExceeded("pressure depth above the depth budget");

    // Depth counts map applications, so the cylinders are (depth+1)-letter
    // words. Rescaling every base interval to unit length conjugates the
    // word map to one whose contraction bracket is
    //     [dmin, dmax] * |base(first)| / |base(last)|
    // (expanding side). These conjugated brackets are sub/super-multiplicative
    // under word concatenation, so grouping the sums by starting letter and
    // taking the worst row gives roots that enclose the Hausdorff dimension
    // at every depth and tighten monotonically as the depth doubles. For
    // affine systems both roots collapse to the exact dimension.
    DimensionBracket out;
    out.depth = depth;
    out.d_lower = std::numeric_limits<double>::infinity();
    out.d_upper = 0.0;
    std::size_t total_words = 0;
    for (Sym a = 0; a < sys.alphabet_size(); ++a) {
        const auto words = sys.shift().words_from(a, depth + 1);
        total_words += words.size();
        if (total_words > budget.max_words) {
            throw BudgetExceeded("pressure enumeration above the word budget");
        }
        std::vector<double> upper_weights, lower_weights;
        upper_weights.reserve(words.size());
        lower_weights.reserve(words.size());
        const double first_len = sys.base(a).length();
        for (const auto& w : words) {
            auto [dmin, dmax] = sys.derivative_bounds_on_cylinder(w);
            const double ratio = first_len / sys.base(w.back()).length();
            upper_weights.push_back(dmin * ratio); // reciprocal of the largest conjugated contraction
            lower_weights.push_back(dmax * ratio); // reciprocal of the smallest
        }
        out.d_upper = std::max(out.d_upper, solve_pressure_root(upper_weights));
        out.d_lower = std::min(out.d_lower, solve_pressure_root(lower_weights));
    }
    return out;
}

BoxFit box_dimension_estimate(const std::vector<std::pair<double, std::size_t>>& cover_counts) {
    std::vector<double> xs, ys;
    for (auto [delta, count] : cover_counts) {
        if (!(delta > 0.0)) throw DegenerateScales("scales must be positive");
        if (count < 1) throw DegenerateScales("cover counts must be at least 1");
        xs.push_back(std::log(1.0 / delta));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw DegenerateScales("need at least 3 distinct scales");

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double max_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        max_res = std::max(max_res, std::abs(ys[i] - (intercept + slope * xs[i])));
    }
    return {slope, max_res};
}

MassCertificate mass_distribution_certify(const std::vector<std::vector<Interval>>& levels,
                                          double d_tilde) {
    constexpr double tol = 1e-12;
    MassCertificate cert;
    cert.d_tilde = d_tilde;
    cert.certified = true;
    cert.worst_sum = std::numeric_limits<double>::infinity();
    if (levels.empty()) return cert;

    for (const auto& level : levels) {
        // Pairwise disjoint interiors within a level.
        std::vector<Interval> sorted = level;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            if (sorted[i + 1].lo < sorted[i].hi - tol) {
                throw NestingViolated("intervals overlap within one level");
            }
        }
        for (const auto& iv : level) {
            if (!(iv.lo < iv.hi)) throw NestingViolated("degenerate interval in a level");
        }
    }

    for (std::size_t r = 1; r < levels.size(); ++r) {
        const auto& parents = levels[r - 1];
        const auto& children = levels[r];
        std::vector<double> sums(parents.size(), 0.0);
        for (const auto& c : children) {
            int owner = -1;
            for (std::size_t p = 0; p < parents.size(); ++p) {
                if (parents[p].contains(c, tol)) {
                    if (owner >= 0) throw NestingViolated("child contained in two parents");
                    owner = static_cast<int>(p);
                }
            }
            if (owner < 0) throw NestingViolated("child interval escapes every parent");
            sums[static_cast<std::size_t>(owner)] +=
                std::pow(c.length() / parents[static_cast<std::size_t>(owner)].length(), d_tilde);
        }
        for (std::size_t p = 0; p < parents.size(); ++p) {
            cert.worst_sum = std::min(cert.worst_sum, sums[p]);
            if (cert.certified && sums[p] < 1.0 - tol) {
                cert.certified = false;
                cert.violating_level = static_cast<int>(r);
                cert.violating_parent = p;
                cert.worst_sum = sums[p];
            }
            if (!cert.certified) break;
        }
        if (!cert.certified) break;
    }
    return cert;
}

std::vector<std::vector<Interval>> cylinder_tree(const CantorSystem& sys, int letters_step,
                                                 int levels) {
    std::vector<std::vector<Interval>> out;
    for (int j = 0; j < levels; ++j) {
        const int letters = (j + 1) * letters_step;
        std::vector<Interval> level;
        for (const auto& w : sys.shift().words(letters)) {
            level.push_back(sys.cylinder_interval(w));
        }
        out.push_back(std::move(level));
    }
    return out;
}

} // namespace cantorlab
