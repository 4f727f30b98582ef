#include "cantorlab/marstrand.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "cantorlab/errors.hpp"

namespace cantorlab {

Interval AffineMap::image(const Interval& iv) const {
    return hull_of((*this)(iv.lo), (*this)(iv.hi));
}

DeltaRectangle DeltaRectangle::from_intervals(Word w, Word wp, const Interval& x,
                                              const Interval& y) {
    DeltaRectangle r;
    r.word = std::move(w);
    r.word_p = std::move(wp);
    r.rect_x = x;
    r.rect_y = y;
    r.cx = x.mid();
    r.cy = y.mid();
    r.u = 0.5 * x.length();
    r.v = 0.5 * y.length();
    return r;
}

Interval DeltaRectangle::projected(double s) const {
    const double mid = cx - s * cy;
    const double half = u + std::abs(s) * v;
    return {mid - half, mid + half};
}

std::vector<DeltaRectangle> delta_rectangles(const CantorSystem& sys, const CantorSystem& sys_p,
                                             const AffineMap& embed, const AffineMap& embed_p,
                                             double delta, double c0, const EnumBudget& budget) {
    const auto words = sys.words_at_scale_stretched(delta, c0, std::abs(embed.slope), budget);
    const auto words_p = sys_p.words_at_scale_stretched(delta, c0, std::abs(embed_p.slope), budget);
    if (words.empty() || words_p.empty()) {
        throw EmptyScale("no cylinder of a factor lands in the scale window");
    }
    if (words.size() > budget.max_words / words_p.size()) {
        throw BudgetExceeded("rectangle count " + std::to_string(words.size()) + " x " +
                             std::to_string(words_p.size()) + " exceeds the word budget");
    }

    std::vector<Interval> xs, ys;
    xs.reserve(words.size());
    ys.reserve(words_p.size());
    for (const Word& w : words) xs.push_back(embed.image(sys.cylinder_interval(w)));
    for (const Word& w : words_p) ys.push_back(embed_p.image(sys_p.cylinder_interval(w)));

    std::vector<DeltaRectangle> out;
    out.reserve(words.size() * words_p.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < words_p.size(); ++j) {
            out.push_back(DeltaRectangle::from_intervals(words[i], words_p[j], xs[i], ys[j]));
        }
    }
    return out;
}

std::size_t count_overlaps(const std::vector<DeltaRectangle>& rects, double s) {
    const std::size_t m = rects.size();
    if (m == 0) return 0;

    std::vector<Interval> proj;
    proj.reserve(m);
    double scale = 1.0;
    for (const auto& r : rects) {
        proj.push_back(r.projected(s));
        scale = std::max({scale, std::abs(proj.back().lo), std::abs(proj.back().hi)});
    }
    // Endpoints that touch in exact arithmetic usually differ by a few ulp
    // here; the slack keeps the closed-interval convention deterministic.
    const double tol = 1e-12 * scale;
    std::sort(proj.begin(), proj.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

    // Sweep left to right; the heap holds right endpoints of intervals whose
    // span is still alive. Every interval still alive when [lo, hi] starts
    // began no later and ends no earlier than lo, so it intersects.
    std::priority_queue<double, std::vector<double>, std::greater<>> alive;
    std::size_t unordered = 0;
    for (const Interval& iv : proj) {
        while (!alive.empty() && alive.top() < iv.lo - tol) alive.pop();
        unordered += alive.size();
        alive.push(iv.hi);
    }
    return 2 * unordered + m; // ordered pairs plus the diagonal
}

namespace {

// Measure of {t in [0, hi] : a1*t <= b1 and a2*t <= b2}.
double halfline_measure(double hi, double a1, double b1, double a2, double b2) {
    double lo = 0.0;
    const auto clip = [&](double a, double b) {
        if (a > 0.0) {
            hi = std::min(hi, b / a);
        } else if (a < 0.0) {
            lo = std::max(lo, b / a);
        } else if (b < 0.0) {
            lo = 1.0;
            hi = 0.0;
        }
    };
    clip(a1, b1);
    clip(a2, b2);
    return std::max(0.0, hi - lo);
}

} // namespace

double overlap_lambda_measure(const DeltaRectangle& q, const DeltaRectangle& qt, double R) {
    const double dx = q.cx - qt.cx;
    const double dy = q.cy - qt.cy;
    const double U = q.u + qt.u;
    const double V = q.v + qt.v;
    // Projections meet iff |dx - lambda*dy| <= U + |lambda|*V, i.e. the pair
    // of linear constraints dx - lambda*dy <= U + |lambda|V and its mirror.
    // Solved separately on each sign of lambda (where |lambda| is linear).
    const double pos = halfline_measure(R, -(dy + V), U - dx, dy - V, U + dx);
    const double neg = halfline_measure(R, dy - V, U - dx, -dy - V, U + dx);
    return pos + neg;
}

double integral_estimate(const std::vector<DeltaRectangle>& rects, double R) {
    double total = 2.0 * R * static_cast<double>(rects.size()); // diagonal pairs
    for (std::size_t i = 0; i < rects.size(); ++i) {
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            total += 2.0 * overlap_lambda_measure(rects[i], rects[j], R);
        }
    }
    return total;
}

double projection_union_measure(const std::vector<DeltaRectangle>& rects, double s) {
    std::vector<Interval> proj;
    proj.reserve(rects.size());
    for (const auto& r : rects) proj.push_back(r.projected(s));
    return union_measure(proj);
}

UnionBoundReport shrunk_family_union_bound(const std::vector<Interval>& base,
                                           const std::vector<Interval>& derived,
                                           double eps, double lambda, double nu) {
    if (!(eps > 0.0) || !(lambda > 1.0) || !(nu > 0.0)) {
        throw HypothesisViolated("need eps > 0, lambda > 1, nu > 0");
    }
    if (base.size() != derived.size()) {
        throw HypothesisViolated("families must share the index set");
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double len = base[i].length();
        if (!(len > eps && len < lambda * eps)) {
            throw HypothesisViolated("base interval length outside (eps, lambda*eps)");
        }
        if (!(derived[i].length() > eps)) {
            throw HypothesisViolated("derived interval not longer than eps");
        }
        if (std::abs(base[i].mid() - derived[i].mid()) > nu * eps * (1.0 + 1e-12)) {
            throw HypothesisViolated("centers further apart than nu*eps");
        }
    }
    UnionBoundReport rep;
    rep.lhs = union_measure(derived);
    rep.rhs = union_measure(base) / (lambda * (4.0 * nu + 4.0));
    rep.holds = rep.lhs >= rep.rhs;
    return rep;
}

UnionBoundReport subset_family_union_bound(const std::vector<Interval>& base,
                                           const std::vector<Interval>& subsets,
                                           double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw HypothesisViolated("need 0 < nu <= 1");
    if (base.size() != subsets.size()) {
        throw HypothesisViolated("families must share the index set");
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!base[i].contains(subsets[i], 1e-12 * std::max(1.0, base[i].length()))) {
            throw HypothesisViolated("subset interval escapes its base interval");
        }
        if (subsets[i].length() < nu * base[i].length() * (1.0 - 1e-12)) {
            throw HypothesisViolated("subset shorter than nu times its base");
        }
    }
    UnionBoundReport rep;
    rep.lhs = union_measure(subsets);
    rep.rhs = 0.5 * nu * union_measure(base);
    rep.holds = rep.lhs >= rep.rhs;
    return rep;
}

} // namespace cantorlab
