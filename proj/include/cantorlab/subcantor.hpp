#pragma once

#include <cstddef>
#include <vector>

#include "cantorlab/dimension.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

struct ExtractOptions {
    int gate_depth = 6;         // audit depth for the b <= d_lower precondition
    int max_block_letters = 24; // give up past this block length
    // Slack required of the depth-n pressure root above (a+b)/2 before a
    // block length is accepted; negative means (b-a)/4.
    double margin = -1.0;
    // Certify the result bracket against (a, (a+b)/2] instead of (a, b);
    // the construction actually lands below the midpoint, the default just
    // checks the advertised window.
    bool certify_tight = false;
    EnumBudget budget;
};

// A sub-Cantor-set with dimension steered into a requested window: keep
// only length-n words that start and end at fixed marker letters, so kept
// words concatenate freely, then prune the heaviest words until the
// midpoint pressure sum drops under the distortion allowance.
struct SubCantorResult {
    int n = 0;            // block length in letters
    Sym marker_start = 0; // every block starts here
    Sym marker_end = 0;   // and ends here; (end, start) is admissible
    std::vector<Word> kept;
    Word pivot; // last word removed: restoring it pushes the sum back over

    double c_hat = 0.0;              // distortion allowance (0.9 * measured ratio)
    double sum_mid = 0.0;            // kept sum of Lambda^{-(a+b)/2}, <= c_hat
    double sum_mid_with_pivot = 0.0; // > c_hat
    double sum_a = 0.0;              // kept sum of Lambda^{-a}, > 1
    double sum_lambda_mid = 0.0;     // kept sum of lambda^{-(a+b)/2}, < 1

    CantorSystem system;     // block system: full shift over the kept words
    DimensionBracket result; // two-block pressure audit of that system
};

// Build a regular Cantor subset with a < HD < b (the audit bracket is
// checked against the window before returning). Weights Lambda/lambda are
// the derivative bounds of the n-application block branches, i.e. of the
// kept word extended by the start marker; for affine systems they make
// every reported quantity exact.
//
// Throws TargetAboveDimension if b exceeds the certified lower dimension
// bound, BudgetExceeded if enumeration outgrows the budget, and
// DistortionTooWeak if no block length within the cap satisfies all the
// inequalities.
SubCantorResult extract_subcantor(const CantorSystem& sys, double a, double b,
                                  const ExtractOptions& opts = {});

} // namespace cantorlab
