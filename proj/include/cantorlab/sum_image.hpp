#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cantorlab/dimension.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

// A map of two real variables from one of three families, stored as the
// coefficients of c00 + c10 x + c01 y + c20 x^2 + c11 xy + c02 y^2.
class BivariateMap {
public:
    static BivariateMap linear_projection(double s); // (x, y) -> x - s y
    static BivariateMap sum(double s);               // (x, y) -> x + s y
    static BivariateMap quadratic(const std::array<double, 6>& coeffs);

    double operator()(double x, double y) const;
    double dx(double x, double y) const;
    double dy(double x, double y) const;

    // Sup norm of the second partials, max(2|c20|, |c11|, 2|c02|). This is
    // the constant in the curvature padding of rectangle images; zero for
    // the linear families.
    double curvature_bound() const;
    bool linear() const { return curvature_bound() == 0.0; }
    const std::array<double, 6>& coeffs() const { return c_; }

private:
    explicit BivariateMap(const std::array<double, 6>& c) : c_(c) {}
    std::array<double, 6> c_;
};

struct GradientWitness {
    bool found = false;
    double x = 0.0;
    double y = 0.0;
    double fx = 0.0;
    double fy = 0.0;
};

// Both partials must clear this in absolute value at a witness point.
inline constexpr double kGradientTol = 1e-6;

// Scan the centers of the delta-rectangle cover of the product set for a
// point where neither partial vanishes. Returns the first witness in
// lexicographic rectangle order, or found = false if every center has a
// near-axis gradient (or the scale window is empty).
GradientWitness gradient_condition_check(const BivariateMap& map, const CantorSystem& sys,
                                         const CantorSystem& sys_p, double delta,
                                         double c0 = 2.0, const EnumBudget& budget = {});

// Merged union of interval enclosures of f over every delta-rectangle:
// corner evaluation, exact for maps affine in each variable, plus a
// curvature_bound * diam^2 padding otherwise. Components closer than 1e-12
// (relative) are coalesced, so arithmetic-sum identities that close up
// exactly come back as a single interval.
std::vector<Interval> image_cover(const BivariateMap& map, const CantorSystem& sys,
                                  const CantorSystem& sys_p, double delta, double c0 = 2.0,
                                  const EnumBudget& budget = {});

// Number of grid cells [j delta, (j+1) delta) that meet the union by more
// than a hair (1e-12 relative). The inward tolerance makes grid-aligned
// unions count exactly length / delta regardless of endpoint roundoff.
std::size_t grid_cells_hit(const std::vector<Interval>& merged, double delta);

struct CoverCount {
    double delta = 0.0;
    std::size_t cells = 0;
};

std::vector<CoverCount> image_cover_counts(const BivariateMap& map, const CantorSystem& sys,
                                           const CantorSystem& sys_p,
                                           const std::vector<double>& deltas, double c0 = 2.0,
                                           const EnumBudget& budget = {});

enum class MapFamily { LinearProjection, Sum };

BivariateMap make_family_map(MapFamily family, double s);

struct ScanRow {
    double s = 0.0;
    BoxFit fit; // slope over the finest five scales
    std::vector<CoverCount> table;
    bool flagged = false; // |slope - expected| > tolerance
};

struct DimensionScanResult {
    MapFamily family = MapFamily::Sum;
    double expected = 0.0;
    double tolerance = 0.1;
    std::vector<ScanRow> rows;
};

// Box-count slopes of the family images across an s-grid, flagging
// departures from the expected value (min(1, d + d') for generic pairs;
// departures are the resonances worth looking at). Rectangles are
// enumerated once per scale and shared across the grid; threads > 1 splits
// the grid into parallel chunks with deterministic assembly.
DimensionScanResult dimension_scan(MapFamily family, const CantorSystem& sys,
                                   const CantorSystem& sys_p,
                                   const std::vector<double>& s_grid,
                                   const std::vector<double>& deltas, double expected_dim,
                                   double tolerance = 0.1, double c0 = 2.0, int threads = 1,
                                   const EnumBudget& budget = {});

} // namespace cantorlab
