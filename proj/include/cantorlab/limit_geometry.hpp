#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cantorlab/branch.hpp"
#include "cantorlab/jet.hpp"
#include "cantorlab/subshift.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

// Normalized deep composition along a tail word. For a tail ending at symbol
// a0, depth n uses the last n+1 symbols (n map applications): the composed
// contraction from base(a0) into the cylinder of those symbols, postcomposed
// with the unique affine map that sends the cylinder back onto base(a0) and
// makes the whole map increasing. Affine systems normalize to the identity
// at every depth; in general the maps converge in C1 as the depth grows, and
// `residual` records the measured C1 distance to the depth n-1 map on a
// fixed 101-point grid of base(a0).
class LimitGeometry {
public:
    LimitGeometry(const CantorSystem& sys, TailWord tail, int depth);

    const TailWord& tail() const { return tail_; }
    int depth() const { return depth_; }
    Sym anchor() const { return anchor_; }
    // Domain and image: base(anchor).
    Interval domain() const { return domain_; }
    double residual() const { return residual_; }

    Jet2 eval(double x) const;
    double value(double x) const { return eval(x).v; }
    // Monotone increasing on the domain, so the inverse is found by
    // bisection; inverse_eval returns the full inverse jet.
    double inverse(double u) const;
    Jet2 inverse_eval(double u) const;
    // Image of a subinterval of the domain (the map is increasing).
    Interval image_of(const Interval& sub) const;

    static constexpr int kResidualGridPoints = 101;

private:
    TailWord tail_;
    int depth_ = 0;
    Sym anchor_ = 0;
    Interval domain_{0.0, 1.0};
    // Composition over the used suffix; absent at depth 0 (identity).
    std::optional<Branch> composed_;
    double affine_slope_ = 1.0; // the normalizing map u -> slope*u + offset
    double affine_offset_ = 0.0;
    double residual_ = 0.0;
};

LimitGeometry limit_geometry(const CantorSystem& sys, const TailWord& tail, int depth);

// Residuals of the exact-renormalization audit: the affine map from the
// domain onto the shifted geometry's image of the `steps`-symbol cylinder,
// applied after the primary geometry, must agree with the shifted geometry
// applied after the word contraction. With the primary geometry truncated at
// depth + steps and the shifted one at depth, agreement is exact up to
// roundoff; the truncation residuals of both geometries are reported so the
// audit residual can be compared against them.
struct AffineRelationReport {
    double max_residual = 0.0;     // max pointwise gap over the grid
    double primary_residual = 0.0; // truncation residual, depth + steps
    double shifted_residual = 0.0; // truncation residual, depth
};

AffineRelationReport check_affine_relation(const CantorSystem& sys, const TailWord& tail,
                                           int steps, int depth, int grid_points = 50);

// Log-derivative profile tau''/tau' of the transfer map tau between two
// limit geometries anchored at the same symbol: tau = k1 after inverse(k0).
// A profile bounded away from zero somewhere on the limit set certifies that
// the pair is not jointly affine at the audited depth. Grid points are
// equispaced on the common domain and kept only if they fall in a cylinder
// of the 7-letter cover (6 applications), so values are sampled near the
// limit set itself.
struct TransferProfile {
    std::vector<std::pair<double, double>> values; // (x, tau''/tau' at x)
    double max_abs = 0.0;
};

TransferProfile h_prime_one_profile(const CantorSystem& sys, const TailWord& tail0,
                                    const TailWord& tail1, int depth, int grid_points = 101);

// Ratios of log-eigenvalues of periodic orbits, with continued-fraction
// convergents. For each pair (i < j) the ratio is log|mu_j| / log|mu_i|;
// convergents are listed up to denominator 10^6 and matched_denominator is
// the first denominator approximating the ratio within 1e-12 (-1 if none
// does). Nothing is asserted about irrationality; the report only shows how
// large a denominator must be.
struct EigenRatio {
    Word word_a, word_b;
    double eigen_a = 0.0, eigen_b = 0.0; // |mu|, both above 1
    double ratio = 0.0;                  // log(eigen_b) / log(eigen_a)
    std::vector<std::pair<std::int64_t, std::int64_t>> convergents;
    std::int64_t matched_denominator = -1;
};

std::vector<EigenRatio> eigenvalue_ratio_report(const CantorSystem& sys,
                                                const std::vector<Word>& cycles);

} // namespace cantorlab
