#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cantorlab/interval.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

// Dimension bracket from the discretized pressure equation at one depth.
struct DimensionBracket {
    int depth = 0;
    double d_lower = 0.0;
    double d_upper = 0.0;
};

// Root of sum_i weights[i]^(-d) = 1 by bisection; weights must exceed 1 so
// the sum is strictly decreasing and the root unique. Tolerance 1e-12 on d.
double solve_pressure_root(const std::vector<double>& weights);

// Bracket the Hausdorff dimension at one depth (depth = number of map
// applications, so cylinders are (depth+1)-letter words). Per word the
// expanding derivative range is rescaled as if every base interval had unit
// length; those conjugated ranges are sub/super-multiplicative under
// concatenation, so the per-starting-letter pressure roots (worst letter on
// each side) satisfy d_lower <= HD <= d_upper at every depth, with brackets
// at depth 2n nested inside depth n and exact equality for affine systems.
DimensionBracket pressure_dimension(const CantorSystem& sys, int depth,
                                    const EnumBudget& budget = {});

struct BoxFit {
    double slope = 0.0;
    double max_residual = 0.0;
};

// Least-squares slope of log N against log(1/delta). Needs at least three
// distinct scales with positive counts.
BoxFit box_dimension_estimate(const std::vector<std::pair<double, std::size_t>>& cover_counts);

// Mass-distribution certificate: refusal is a result, not an error.
struct MassCertificate {
    bool certified = false;
    double d_tilde = 0.0;
    // Child level of the first failing parent sum (or -1), the parent's
    // index within its level, and the failing sum value.
    int violating_level = -1;
    std::size_t violating_parent = 0;
    double worst_sum = 0.0;
};

// levels[r] is a list of pairwise-disjoint closed intervals, each contained
// in exactly one interval of levels[r-1]. Certifies HD >= d_tilde for the
// limit set when every parent P with children C satisfies
// sum (|C|/|P|)^d_tilde >= 1 (up to 1e-12 slack for float-exact cases).
MassCertificate mass_distribution_certify(const std::vector<std::vector<Interval>>& levels,
                                          double d_tilde);

// Cylinder tree with levels at (j+1)*letters_step letters, j = 0..levels-1.
std::vector<std::vector<Interval>> cylinder_tree(const CantorSystem& sys, int letters_step,
                                                 int levels);

} // namespace cantorlab
