#include "doctest.h"

#include <cmath>
#include <vector>

#include "cantorlab/dimension.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/marstrand.hpp"
#include "cantorlab/sum_image.hpp"
#include "cantorlab/system.hpp"

using namespace cantorlab;

namespace {

bool covered(const std::vector<Interval>& merged, double v, double slack = 1e-9) {
    for (const Interval& iv : merged) {
        if (v >= iv.lo - slack && v <= iv.hi + slack) {
            return true;
        }
    }
    return false;
}

double union_length(const std::vector<Interval>& merged) {
    double total = 0.0;
    for (const Interval& iv : merged) {
        total += iv.length();
    }
    return total;
}

} // namespace

TEST_CASE("bivariate map families evaluate and differentiate") {
    BivariateMap s2 = BivariateMap::sum(2.0);
    CHECK(s2(1.0, 0.5) == 2.0);
    CHECK(s2.dx(0.3, 0.9) == 1.0);
    CHECK(s2.dy(0.3, 0.9) == 2.0);
    CHECK(s2.linear());
    CHECK(s2.curvature_bound() == 0.0);

    BivariateMap proj = BivariateMap::linear_projection(2.0);
    CHECK(proj(1.0, 0.5) == 0.0);
    CHECK(proj.dy(0.0, 0.0) == -2.0);

    BivariateMap q = BivariateMap::quadratic({0.0, 0.0, 0.0, 1.0, 2.0, 3.0});
    CHECK(q(2.0, 1.0) == doctest::Approx(4.0 + 4.0 + 3.0));
    CHECK(q.dx(2.0, 1.0) == doctest::Approx(2.0 * 2.0 + 2.0 * 1.0));
    CHECK(q.dy(2.0, 1.0) == doctest::Approx(2.0 * 2.0 + 2.0 * 3.0));
    CHECK(q.curvature_bound() == 6.0);
    CHECK_FALSE(q.linear());
}

TEST_CASE("gradient condition check") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);

    GradientWitness w = gradient_condition_check(BivariateMap::sum(1.0), sys, sys, 1.0 / 9.0);
    CHECK(w.found);
    CHECK(w.fx == 1.0);
    CHECK(w.fy == 1.0);

    // s = 0 projection ignores y entirely: no witness at any center.
    GradientWitness none =
        gradient_condition_check(BivariateMap::linear_projection(0.0), sys, sys, 1.0 / 9.0);
    CHECK_FALSE(none.found);

    // xy has partials (y, x): every rectangle center is off the axes, and
    // the first one in enumeration order is (1/18, 1/18).
    BivariateMap xy = BivariateMap::quadratic({0.0, 0.0, 0.0, 0.0, 1.0, 0.0});
    GradientWitness q = gradient_condition_check(xy, sys, sys, 1.0 / 9.0);
    CHECK(q.found);
    CHECK(q.x == doctest::Approx(1.0 / 18.0).epsilon(1e-13));
    CHECK(q.y == doctest::Approx(1.0 / 18.0).epsilon(1e-13));
    CHECK(q.fx == doctest::Approx(1.0 / 18.0).epsilon(1e-13));

    // An empty scale window just reports no witness.
    GradientWitness empty =
        gradient_condition_check(BivariateMap::sum(1.0), sys, sys, 0.5, 1.2);
    CHECK_FALSE(empty.found);
}

TEST_CASE("grid cell counting convention") {
    const double d = 0.25;
    CHECK(grid_cells_hit({{0.0, 1.0}}, d) == 4);
    CHECK(grid_cells_hit({{0.0, 0.9}}, d) == 4);
    CHECK(grid_cells_hit({{0.1, 0.1}}, d) == 1);
    CHECK(grid_cells_hit({{0.26, 0.5}}, d) == 1); // grazes cell 2 only at a point
    CHECK(grid_cells_hit({{0.0, 0.24}, {0.26, 0.5}}, d) == 2);
    CHECK(grid_cells_hit({{0.25, 0.25}}, d) == 1); // boundary point still counts once
    CHECK(grid_cells_hit({{0.0, 0.05}, {0.06, 0.07}}, d) == 1); // same cell twice
    CHECK(grid_cells_hit({{-0.3, 0.3}}, d) == 4); // cells -2..1
    CHECK(grid_cells_hit({}, d) == 0);
    CHECK_THROWS_AS(grid_cells_hit({{0.0, 1.0}}, 0.0), ConfigError);
}

TEST_CASE("middle-third sum saturates [0, 2]") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);
    BivariateMap f = BivariateMap::sum(1.0);
    for (int k = 2; k <= 5; ++k) {
        const double delta = std::pow(3.0, -k);
        std::vector<Interval> merged = image_cover(f, sys, sys, delta);
        REQUIRE(merged.size() == 1);
        CHECK(std::abs(merged[0].lo) <= 1e-12);
        CHECK(std::abs(merged[0].hi - 2.0) <= 1e-12);
        CHECK(grid_cells_hit(merged, delta) == 2 * static_cast<std::size_t>(std::pow(3.0, k)));
    }
}

TEST_CASE("degenerate s = 0 reduces to the first factor's cover") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);
    BivariateMap f = BivariateMap::sum(0.0);
    std::vector<double> deltas;
    for (int k = 2; k <= 6; ++k) {
        deltas.push_back(std::pow(3.0, -k));
    }
    std::vector<CoverCount> counts = image_cover_counts(f, sys, sys, deltas);
    std::vector<std::pair<double, std::size_t>> table;
    for (int k = 2; k <= 6; ++k) {
        // 2^k aligned cylinders of length 3^-k, one cell each.
        CHECK(counts[static_cast<std::size_t>(k - 2)].cells ==
              static_cast<std::size_t>(1) << k);
        table.emplace_back(counts[static_cast<std::size_t>(k - 2)].delta,
                           counts[static_cast<std::size_t>(k - 2)].cells);
    }
    BoxFit fit = box_dimension_estimate(table);
    CHECK(fit.slope == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(fit.max_residual <= 1e-12);
}

TEST_CASE("linear covers agree with the projection-measure path within factor 4") {
    CantorSystem third = middle_alpha(1.0 / 3.0);
    {
        const double delta = std::pow(3.0, -4);
        auto rects = delta_rectangles(third, third, {}, {}, delta, 2.0);
        const double measure = projection_union_measure(rects, 1.3);
        const double cells = static_cast<double>(grid_cells_hit(
            image_cover(BivariateMap::linear_projection(1.3), third, third, delta), delta));
        CHECK(cells * delta >= measure / 4.0);
        CHECK(cells * delta <= measure * 4.0);
    }

    CantorSystem g = gauss_digits({1, 2});
    std::size_t prev = 0;
    std::vector<std::pair<double, std::size_t>> table;
    for (int k = 6; k <= 10; ++k) {
        const double delta = std::pow(2.0, -k);
        auto rects = delta_rectangles(g, g, {}, {}, delta, 2.0);
        const double measure = projection_union_measure(rects, -1.0);
        const std::size_t cells =
            grid_cells_hit(image_cover(BivariateMap::sum(1.0), g, g, delta), delta);
        CHECK(static_cast<double>(cells) * delta >= measure / 4.0);
        CHECK(static_cast<double>(cells) * delta <= measure * 4.0);
        CHECK(cells >= prev); // nondecreasing as delta shrinks
        prev = cells;
        table.emplace_back(delta, cells);
    }
    // Lipschitz images cannot beat dimension min(1, d + d').
    BoxFit fit = box_dimension_estimate(table);
    CHECK(fit.slope <= 1.05);
}

TEST_CASE("covers really cover: sampled image points land inside") {
    CantorSystem g = gauss_digits({1, 2});
    BivariateMap f = BivariateMap::sum(1.0);
    const double delta = std::pow(2.0, -6);
    std::vector<Interval> merged = image_cover(f, g, g, delta);
    std::vector<Word> fine = g.words_at_scale(delta / 8.0, 2.0);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        for (std::size_t j = 0; j < fine.size(); j += 2) {
            const Interval rx = g.cylinder_interval(fine[i]);
            const Interval ry = g.cylinder_interval(fine[j]);
            CHECK(covered(merged, f(rx.lo, ry.hi)));
            ++checked;
        }
    }
    CHECK(checked >= 50);

    // Quadratic map: corner evaluation alone is not an enclosure, the
    // curvature padding has to absorb interior extrema.
    CantorSystem third = middle_alpha(1.0 / 3.0);
    BivariateMap q = BivariateMap::quadratic({0.0, -1.0, 0.0, 1.0, 1.0, -2.0});
    std::vector<Interval> qcover = image_cover(q, third, third, 1.0 / 27.0);
    std::vector<Word> tfine = third.words_at_scale(std::pow(3.0, -5), 2.0);
    for (std::size_t i = 0; i < tfine.size(); i += 2) {
        for (std::size_t j = 0; j < tfine.size(); j += 3) {
            const Interval rx = third.cylinder_interval(tfine[i]);
            const Interval ry = third.cylinder_interval(tfine[j]);
            CHECK(covered(qcover, q(rx.mid(), ry.mid())));
        }
    }
}

TEST_CASE("quadratic covers shrink monotonically and respect the Lipschitz bound") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);
    BivariateMap xy = BivariateMap::quadratic({0.0, 0.0, 0.0, 0.0, 1.0, 0.0});
    std::vector<std::pair<double, std::size_t>> table;
    std::size_t prev = 0;
    double prev_len = 1e300;
    for (int k = 2; k <= 6; ++k) {
        const double delta = std::pow(3.0, -k);
        std::vector<Interval> merged = image_cover(xy, sys, sys, delta);
        const std::size_t cells = grid_cells_hit(merged, delta);
        CHECK(cells >= prev);
        prev = cells;
        const double len = union_length(merged);
        CHECK(len <= prev_len + 1e-9);
        prev_len = len;
        table.emplace_back(delta, cells);
    }
    BoxFit fit = box_dimension_estimate(table);
    CHECK(fit.slope <= 1.05);
}

TEST_CASE("dimension scan: middle-third sums fill intervals") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);
    std::vector<double> deltas;
    for (int k = 2; k <= 6; ++k) {
        deltas.push_back(std::pow(3.0, -k));
    }
    DimensionScanResult scan =
        dimension_scan(MapFamily::Sum, sys, sys, {0.5, 1.0, 2.0}, deltas, 1.0);
    REQUIRE(scan.rows.size() == 3);
    // C + sC = [0, 1 + s] for 1/3 <= s <= 3, so the counts are the grid
    // counts of a full interval.
    const std::vector<std::vector<std::size_t>> expect{
        {14, 41, 122, 365, 1094},  // s = 1/2: floor(1.5 * 3^k) + 1
        {18, 54, 162, 486, 1458},  // s = 1:   2 * 3^k
        {27, 81, 243, 729, 2187}}; // s = 2:   3 * 3^k
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        REQUIRE(scan.rows[i].table.size() == 5);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(scan.rows[i].table[k].cells == expect[i][k]);
        }
        CHECK(scan.rows[i].fit.slope > 0.95);
        CHECK(scan.rows[i].fit.slope < 1.005);
        CHECK_FALSE(scan.rows[i].flagged);
    }
    CHECK(scan.expected == 1.0);

    // Thread split must not change anything.
    DimensionScanResult par =
        dimension_scan(MapFamily::Sum, sys, sys, {0.5, 1.0, 2.0}, deltas, 1.0, 0.1, 2.0, 4);
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        CHECK(par.rows[i].fit.slope == scan.rows[i].fit.slope);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(par.rows[i].table[k].cells == scan.rows[i].table[k].cells);
        }
    }
}

TEST_CASE("dimension scan flags the self-similar resonance at s = 1") {
    // Affine pair tuned to d + d' = 0.8; at s = 1 the sum collapses onto a
    // three-branch self-similar set and the slope drops well below 0.8.
    const double r = std::pow(2.0, -2.5);
    CantorSystem sys = middle_alpha(r);
    std::vector<double> deltas;
    for (int k = 2; k <= 6; ++k) {
        deltas.push_back(std::pow(r, k));
    }
    DimensionScanResult scan = dimension_scan(MapFamily::Sum, sys, sys, {1.0}, deltas, 0.8);
    REQUIRE(scan.rows.size() == 1);
    CHECK(std::isfinite(scan.rows[0].fit.slope));
    CHECK(scan.rows[0].flagged);
}

TEST_CASE("dimension scan: perturbed pair tracks min(1, d + d') across the grid") {
    const double r = std::pow(2.0, -2.5);
    CantorSystem sys = perturbed(middle_alpha(r), 0.02);
    DimensionBracket br = pressure_dimension(sys, 6);
    const double expected = br.d_lower + br.d_upper; // twice the bracket mid
    CHECK(expected > 0.75);
    CHECK(expected < 0.82);

    std::vector<double> deltas;
    for (int k = 2; k <= 6; ++k) {
        deltas.push_back(std::pow(r, k));
    }
    const std::vector<double> grid{0.3, 0.6, 0.9, 1.2, 1.5, -1.9, -2.3, 2.8, 3.3, 3.9};
    DimensionScanResult scan = dimension_scan(MapFamily::Sum, sys, sys, grid, deltas, expected);
    std::size_t ok = 0;
    const double lipschitz_cap = std::min(1.0, 2.0 * br.d_upper) + 0.05;
    for (const ScanRow& row : scan.rows) {
        if (!row.flagged) {
            ++ok;
        }
        CHECK(row.fit.slope <= lipschitz_cap);
    }
    CHECK(ok * 10 >= grid.size() * 9); // at least 90% within tolerance
}

TEST_CASE("scan and cover error paths") {
    CantorSystem sys = middle_alpha(1.0 / 3.0);
    CHECK_THROWS_AS(image_cover(BivariateMap::sum(1.0), sys, sys, 0.5, 1.2), EmptyScale);
    CHECK_THROWS_AS(
        image_cover_counts(BivariateMap::sum(1.0), sys, sys, {1.0 / 9.0, 0.5}, 1.2),
        EmptyScale);
    CHECK_THROWS_AS(dimension_scan(MapFamily::Sum, sys, sys, {1.0}, {0.1, 0.01}, 1.0),
                    ConfigError);
    // Enumeration itself polices traversal size; the rectangle product has
    // its own cap on top of that.
    EnumBudget tiny;
    tiny.max_words = 10;
    CHECK_THROWS_AS(
        image_cover(BivariateMap::sum(1.0), sys, sys, std::pow(3.0, -3), 2.0, tiny),
        ScaleTooFine);
    tiny.max_words = 50; // lets 8 words per factor through, rejects 64 rectangles
    CHECK_THROWS_AS(
        image_cover(BivariateMap::sum(1.0), sys, sys, std::pow(3.0, -3), 2.0, tiny),
        BudgetExceeded);
}
