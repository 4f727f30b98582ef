#include "cantorlab/limit_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cantorlab/errors.hpp"

namespace cantorlab {
namespace {

struct NormalizedMap {
    std::optional<Branch> f;
    double slope = 1.0;
    double offset = 0.0;
};

Jet2 eval_map(const NormalizedMap& m, double x) {
    if (!m.f) return identity_jet(x);
    const Jet2 j = m.f->jet(x);
    return {m.slope * j.v + m.offset, m.slope * j.d1, m.slope * j.d2};
}

// Composition along `suffix` postcomposed with the affine map that carries
// the cylinder back onto the anchor base, oriented so the result increases.
NormalizedMap build_map(const CantorSystem& sys, const Word& suffix) {
    NormalizedMap m;
    if (suffix.size() < 2) return m;
    Branch f = sys.composed_branch(suffix);
    const Interval dom = sys.base(suffix.back());
    const Interval cyl = f.map_interval(dom);
    const double stretch = dom.length() / cyl.length();
    if (f.orientation() > 0) {
        m.slope = stretch;
        m.offset = dom.lo - stretch * cyl.lo;
    } else {
        m.slope = -stretch;
        m.offset = dom.lo + stretch * cyl.hi;
    }
    m.f = std::move(f);
    return m;
}

Word used_suffix(const CantorSystem& sys, const TailWord& tail, int depth) {
    if (depth < 0) throw DepthExceedsTail("limit geometry depth must be nonnegative");
    if (static_cast<std::size_t>(depth) + 1 > tail.size()) {
        throw DepthExceedsTail("depth needs depth+1 trailing tail symbols");
    }
    const Word w(tail.symbols.end() - (depth + 1), tail.symbols.end());
    if (!sys.shift().admissible(w)) throw InadmissibleWord("tail suffix is not admissible");
    return w;
}

double c1_grid_distance(const NormalizedMap& a, const NormalizedMap& b, const Interval& dom,
                        int points) {
    double dist = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = dom.lo + dom.length() * i / (points - 1);
        const Jet2 ja = eval_map(a, x);
        const Jet2 jb = eval_map(b, x);
        dist = std::max({dist, std::abs(ja.v - jb.v), std::abs(ja.d1 - jb.d1)});
    }
    return dist;
}

} // namespace

LimitGeometry::LimitGeometry(const CantorSystem& sys, TailWord tail, int depth)
    : tail_(std::move(tail)), depth_(depth) {
    const Word w = used_suffix(sys, tail_, depth_);
    anchor_ = w.back();
    domain_ = sys.base(anchor_);
    NormalizedMap m = build_map(sys, w);
    if (depth_ >= 1) {
        const Word prev(w.begin() + 1, w.end());
        residual_ = c1_grid_distance(m, build_map(sys, prev), domain_, kResidualGridPoints);
    }
    composed_ = std::move(m.f);
    affine_slope_ = m.slope;
    affine_offset_ = m.offset;
}

Jet2 LimitGeometry::eval(double x) const {
    if (!composed_) return identity_jet(x);
    const Jet2 j = composed_->jet(x);
    return {affine_slope_ * j.v + affine_offset_, affine_slope_ * j.d1, affine_slope_ * j.d2};
}

double LimitGeometry::inverse(double u) const {
    // Deep compositions renormalized by large stretch factors carry a few
    // ulps of noise blown up to ~1e-9 of the domain, so the gate has to be
    // loose; inside the gate the target is clamped onto the domain.
    const double slack = 1e-6 * domain_.length();
    if (u < domain_.lo - slack || u > domain_.hi + slack) {
        throw OutOfDomain("inverse target outside the normalized image");
    }
    u = std::clamp(u, domain_.lo, domain_.hi);
    double lo = domain_.lo, hi = domain_.hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Jet2 LimitGeometry::inverse_eval(double u) const {
    const double x = inverse(u);
    return inverse_jet(x, eval(x));
}

Interval LimitGeometry::image_of(const Interval& sub) const {
    return {value(sub.lo), value(sub.hi)};
}

LimitGeometry limit_geometry(const CantorSystem& sys, const TailWord& tail, int depth) {
    return LimitGeometry(sys, tail, depth);
}

AffineRelationReport check_affine_relation(const CantorSystem& sys, const TailWord& tail,
                                           int steps, int depth, int grid_points) {
    if (steps < 0) throw ConfigError("shift step count must be nonnegative");
    if (grid_points < 2) throw ConfigError("audit grid needs at least 2 points");

    const LimitGeometry primary(sys, tail, depth + steps);
    TailWord shifted_tail{Word(tail.symbols.begin(), tail.symbols.end() - steps)};
    const LimitGeometry shifted(sys, shifted_tail, depth);

    const Interval dom = primary.domain();
    const Word head(tail.symbols.end() - (steps + 1), tail.symbols.end());
    std::optional<Branch> f;
    if (steps >= 1) f = sys.composed_branch(head);
    const Interval cyl = f ? f->map_interval(dom) : dom;
    const int orient = f ? f->orientation() : 1;

    // Affine map from the anchor base onto the shifted geometry's image of
    // the head cylinder, matching the head's orientation.
    const Interval target = shifted.image_of(cyl);
    const double stretch = target.length() / dom.length();
    auto affine = [&](double x) {
        return orient > 0 ? target.lo + stretch * (x - dom.lo)
                          : target.hi - stretch * (x - dom.lo);
    };

    AffineRelationReport report;
    report.primary_residual = primary.residual();
    report.shifted_residual = shifted.residual();
    for (int i = 0; i < grid_points; ++i) {
        const double x = dom.lo + dom.length() * i / (grid_points - 1);
        const double lhs = affine(primary.value(x));
        const double rhs = shifted.value(f ? f->value(x) : x);
        report.max_residual = std::max(report.max_residual, std::abs(lhs - rhs));
    }
    return report;
}

TransferProfile h_prime_one_profile(const CantorSystem& sys, const TailWord& tail0,
                                    const TailWord& tail1, int depth, int grid_points) {
    if (tail0.symbols.empty() || tail1.symbols.empty()) {
        throw TailMismatch("profile needs nonempty tails");
    }
    if (tail0.last() != tail1.last()) {
        throw TailMismatch("tails must share their final symbol");
    }
    if (grid_points < 2) throw ConfigError("audit grid needs at least 2 points");

    const LimitGeometry k0(sys, tail0, depth);
    const LimitGeometry k1(sys, tail1, depth);
    const Interval dom = k0.domain();

    // Keep only grid points inside the 7-letter cylinder cover, so the
    // profile is sampled near the limit set.
    std::vector<Interval> cover;
    for (const auto& w : sys.shift().words_from(k0.anchor(), 7)) {
        cover.push_back(sys.cylinder_interval(w));
    }
    const double tol = 1e-12 * dom.length();

    TransferProfile profile;
    for (int i = 0; i < grid_points; ++i) {
        const double x = dom.lo + dom.length() * i / (grid_points - 1);
        const bool covered = std::any_of(cover.begin(), cover.end(), [&](const Interval& c) {
            return x >= c.lo - tol && x <= c.hi + tol;
        });
        if (!covered) continue;
        const double y = k0.inverse(x);
        const Jet2 inv = inverse_jet(y, k0.eval(y));
        const Jet2 transfer = compose_jets(k1.eval(y), inv);
        const double val = transfer.d2 / transfer.d1;
        profile.values.push_back({x, val});
        profile.max_abs = std::max(profile.max_abs, std::abs(val));
    }
    return profile;
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> convergents_below(double x,
                                                                     std::int64_t max_den) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    double t = x;
    std::int64_t p_prev = 0, q_prev = 1; // numerator/denominator two steps back
    std::int64_t p_last = 1, q_last = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(t);
        if (t - fl > 1.0 - 1e-12) fl += 1.0; // snap near-integer terms
        if (fl > 9e15) break;
        const auto a = static_cast<std::int64_t>(fl);
        const std::int64_t p = a * p_last + p_prev;
        const std::int64_t q = a * q_last + q_prev;
        if (q > max_den) break;
        out.push_back({p, q});
        const double frac = t - fl;
        if (std::abs(frac) < 1e-13) break;
        t = 1.0 / frac;
        p_prev = p_last;
        q_prev = q_last;
        p_last = p;
        q_last = q;
    }
    return out;
}

} // namespace

std::vector<EigenRatio> eigenvalue_ratio_report(const CantorSystem& sys,
                                                const std::vector<Word>& cycles) {
    constexpr std::int64_t kMaxDenominator = 1'000'000;
    constexpr double kApproxTol = 1e-12;

    std::vector<double> moduli;
    moduli.reserve(cycles.size());
    for (const auto& w : cycles) {
        moduli.push_back(std::abs(sys.periodic_point(w).second));
    }

    std::vector<EigenRatio> report;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            EigenRatio entry;
            entry.word_a = cycles[i];
            entry.word_b = cycles[j];
            entry.eigen_a = moduli[i];
            entry.eigen_b = moduli[j];
            entry.ratio = std::log(moduli[j]) / std::log(moduli[i]);
            entry.convergents = convergents_below(entry.ratio, kMaxDenominator);
            for (const auto& [p, q] : entry.convergents) {
                const double approx = static_cast<double>(p) / static_cast<double>(q);
                if (std::abs(entry.ratio - approx) <= kApproxTol) {
                    entry.matched_denominator = q;
                    break;
                }
            }
            report.push_back(std::move(entry));
        }
    }
    return report;
}

} // namespace cantorlab
