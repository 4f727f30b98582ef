#pragma once

#include <cstddef>
#include <vector>

#include "cantorlab/interval.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

// x -> slope * x + offset. Used to place Cantor-set copies in the plane.
struct AffineMap {
    double slope = 1.0;
    double offset = 0.0;

    double operator()(double x) const { return slope * x + offset; }
    Interval image(const Interval& iv) const;
};

// Product of two embedded cylinders: rect_x x rect_y, one per system.
// Centers and half widths are kept denormalized because the counting and
// measure routines only ever touch them.
struct DeltaRectangle {
    Word word;
    Word word_p;
    Interval rect_x;
    Interval rect_y;
    double cx = 0.0;
    double cy = 0.0;
    double u = 0.0; // half width in x, > 0
    double v = 0.0; // half width in y, > 0

    static DeltaRectangle from_intervals(Word w, Word wp, const Interval& x, const Interval& y);
    // [cx - s*cy -+ (u + |s|v)]: the exact slope-s projection x - s*y.
    Interval projected(double s) const;
};

// All products of delta-scale words of the two embedded copies: words whose
// embedded cylinder length lies in [delta/c0, c0*delta]. Throws EmptyScale
// when either system has no word in the window.
std::vector<DeltaRectangle> delta_rectangles(const CantorSystem& sys, const CantorSystem& sys_p,
                                             const AffineMap& embed, const AffineMap& embed_p,
                                             double delta, double c0,
                                             const EnumBudget& budget = {});

// N_delta(s): ordered pairs (diagonal included) whose slope-s projections
// intersect as closed intervals; endpoint touching counts, with a 1e-12
// relative slack so touches that are exact in ideal arithmetic survive
// roundoff. Sort-and-sweep, O(M log M).
std::size_t count_overlaps(const std::vector<DeltaRectangle>& rects, double s);

// Lebesgue measure of {lambda in [-R, R] : projections of q and qt meet}.
// Closed form: |dx - lambda*dy| <= U + |lambda|V solved on each sign of
// lambda and clipped to [-R, R].
double overlap_lambda_measure(const DeltaRectangle& q, const DeltaRectangle& qt, double R);

// Integral over [-R, R] of N(lambda): exact sum of overlap_lambda_measure
// over ordered pairs including the diagonal.
double integral_estimate(const std::vector<DeltaRectangle>& rects, double R);

// Lebesgue measure of the union of the slope-s projections.
double projection_union_measure(const std::vector<DeltaRectangle>& rects, double s);

struct UnionBoundReport {
    double lhs = 0.0; // measure of the derived union
    double rhs = 0.0; // guaranteed fraction of the base union
    bool holds = false;
};

// Two comparison lemmas for families of intervals indexed together.
//
// Shifted family: eps < |J_a| < lambda*eps, eps < |J'_a|, centers of J_a and
// J'_a within nu*eps. Then |union J'| >= |union J| / (lambda*(4nu+4)).
UnionBoundReport shrunk_family_union_bound(const std::vector<Interval>& base,
                                           const std::vector<Interval>& derived,
                                           double eps, double lambda, double nu);
// Subset family: K_a inside J_a with |K_a| >= nu*|J_a|, 0 < nu <= 1. Then
// |union K| >= nu/2 * |union J|.
UnionBoundReport subset_family_union_bound(const std::vector<Interval>& base,
                                           const std::vector<Interval>& subsets,
                                           double nu);

} // namespace cantorlab
