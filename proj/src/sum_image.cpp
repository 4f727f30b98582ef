#include "cantorlab/sum_image.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "cantorlab/errors.hpp"

namespace cantorlab {

BivariateMap BivariateMap::linear_projection(double s) {
    return BivariateMap({0.0, 1.0, -s, 0.0, 0.0, 0.0});
}

BivariateMap BivariateMap::sum(double s) {
    return BivariateMap({0.0, 1.0, s, 0.0, 0.0, 0.0});
}

BivariateMap BivariateMap::quadratic(const std::array<double, 6>& coeffs) {
    return BivariateMap(coeffs);
}

double BivariateMap::operator()(double x, double y) const {
    return c_[0] + c_[1] * x + c_[2] * y + c_[3] * x * x + c_[4] * x * y + c_[5] * y * y;
}

double BivariateMap::dx(double x, double y) const {
    return c_[1] + 2.0 * c_[3] * x + c_[4] * y;
}

double BivariateMap::dy(double x, double y) const {
    return c_[2] + c_[4] * x + 2.0 * c_[5] * y;
}

double BivariateMap::curvature_bound() const {
    return std::max({2.0 * std::abs(c_[3]), std::abs(c_[4]), 2.0 * std::abs(c_[5])});
}

namespace {

struct RectGrid {
    std::vector<Interval> xs;
    std::vector<Interval> ys;
};

RectGrid rectangles_at(const CantorSystem& sys, const CantorSystem& sys_p, double delta,
                       double c0, const EnumBudget& budget) {
    RectGrid grid;
    for (const Word& w : sys.words_at_scale(delta, c0, budget)) {
        grid.xs.push_back(sys.cylinder_interval(w));
    }
    for (const Word& w : sys_p.words_at_scale(delta, c0, budget)) {
        grid.ys.push_back(sys_p.cylinder_interval(w));
    }
    if (grid.xs.size() * grid.ys.size() > budget.max_words) {
        throw BudgetExceeded("rectangle product at scale " + std::to_string(delta) +
                             " exceeds the word budget");
    }
    return grid;
}

std::vector<Interval> merged_cover(const BivariateMap& map, const RectGrid& grid) {
    const double curb = map.curvature_bound();
    std::vector<Interval> pieces;
    pieces.reserve(grid.xs.size() * grid.ys.size());
    for (const Interval& rx : grid.xs) {
        for (const Interval& ry : grid.ys) {
            const double c00 = map(rx.lo, ry.lo);
            const double c01 = map(rx.lo, ry.hi);
            const double c10 = map(rx.hi, ry.lo);
            const double c11 = map(rx.hi, ry.hi);
            double lo = std::min(std::min(c00, c01), std::min(c10, c11));
            double hi = std::max(std::max(c00, c01), std::max(c10, c11));
            if (curb > 0.0) {
                const double w = rx.length();
                const double h = ry.length();
                const double pad = curb * (w * w + h * h);
                lo -= pad;
                hi += pad;
            }
            pieces.push_back({lo, hi});
        }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& p : pieces) {
        const double tol =
            1e-12 * std::max({1.0, std::abs(p.lo), merged.empty() ? 0.0 : std::abs(merged.back().hi)});
        if (!merged.empty() && p.lo <= merged.back().hi + tol) {
            merged.back().hi = std::max(merged.back().hi, p.hi);
        } else {
            merged.push_back(p);
        }
    }
    return merged;
}

} // namespace

GradientWitness gradient_condition_check(const BivariateMap& map, const CantorSystem& sys,
                                         const CantorSystem& sys_p, double delta, double c0,
                                         const EnumBudget& budget) {
    GradientWitness witness;
    const RectGrid grid = rectangles_at(sys, sys_p, delta, c0, budget);
    for (const Interval& rx : grid.xs) {
        for (const Interval& ry : grid.ys) {
            const double cx = rx.mid();
            const double cy = ry.mid();
            const double fx = map.dx(cx, cy);
            const double fy = map.dy(cx, cy);
            if (std::abs(fx) > kGradientTol && std::abs(fy) > kGradientTol) {
                witness.found = true;
                witness.x = cx;
                witness.y = cy;
                witness.fx = fx;
                witness.fy = fy;
                return witness;
            }
        }
    }
    return witness;
}

std::vector<Interval> image_cover(const BivariateMap& map, const CantorSystem& sys,
                                  const CantorSystem& sys_p, double delta, double c0,
                                  const EnumBudget& budget) {
    RectGrid grid = rectangles_at(sys, sys_p, delta, c0, budget);
    if (grid.xs.empty() || grid.ys.empty()) {
        throw EmptyScale("no rectangle at scale " + std::to_string(delta));
    }
    return merged_cover(map, grid);
}

std::size_t grid_cells_hit(const std::vector<Interval>& merged, double delta) {
    if (delta <= 0.0) {
        throw ConfigError("grid cell size must be positive");
    }
    std::size_t cells = 0;
    long long last = 0;
    bool have_last = false;
    for (const Interval& iv : merged) {
        const double scale = std::max({1.0, std::abs(iv.lo), std::abs(iv.hi)});
        const double tol = std::min(1e-12 * scale, 0.25 * delta);
        long long jl = static_cast<long long>(std::floor((iv.lo + tol) / delta));
        long long jh = static_cast<long long>(std::floor((iv.hi - tol) / delta));
        if (jh < jl) {
            jl = jh = static_cast<long long>(std::floor(iv.mid() / delta));
        }
        if (have_last) {
            jl = std::max(jl, last + 1);
        }
        if (jh >= jl) {
            cells += static_cast<std::size_t>(jh - jl + 1);
            last = jh;
            have_last = true;
        }
    }
    return cells;
}

std::vector<CoverCount> image_cover_counts(const BivariateMap& map, const CantorSystem& sys,
                                           const CantorSystem& sys_p,
                                           const std::vector<double>& deltas, double c0,
                                           const EnumBudget& budget) {
    std::vector<CoverCount> out;
    out.reserve(deltas.size());
    for (double delta : deltas) {
        out.push_back({delta, grid_cells_hit(image_cover(map, sys, sys_p, delta, c0, budget), delta)});
    }
    return out;
}

BivariateMap make_family_map(MapFamily family, double s) {
    return family == MapFamily::LinearProjection ? BivariateMap::linear_projection(s)
                                                 : BivariateMap::sum(s);
}

DimensionScanResult dimension_scan(MapFamily family, const CantorSystem& sys,
                                   const CantorSystem& sys_p, const std::vector<double>& s_grid,
                                   const std::vector<double>& deltas, double expected_dim,
                                   double tolerance, double c0, int threads,
                                   const EnumBudget& budget) {
    if (deltas.size() < 3) {
        throw ConfigError("dimension scan needs at least three scales");
    }
    DimensionScanResult result;
    result.family = family;
    result.expected = expected_dim;
    result.tolerance = tolerance;
    result.rows.resize(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        result.rows[i].s = s_grid[i];
        result.rows[i].table.reserve(deltas.size());
    }

    // One rectangle grid per scale, shared by the whole s-grid.
    for (double delta : deltas) {
        RectGrid grid = rectangles_at(sys, sys_p, delta, c0, budget);
        if (grid.xs.empty() || grid.ys.empty()) {
            throw EmptyScale("no rectangle at scale " + std::to_string(delta));
        }
        const int workers = std::max(1, threads);
        auto count_range = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const BivariateMap map = make_family_map(family, s_grid[i]);
                result.rows[i].table.push_back(
                    {delta, grid_cells_hit(merged_cover(map, grid), delta)});
            }
        };
        if (workers == 1 || s_grid.size() <= 1) {
            count_range(0, s_grid.size());
        } else {
            const std::size_t chunk = (s_grid.size() + workers - 1) / workers;
            std::vector<std::future<void>> tasks;
            for (std::size_t begin = 0; begin < s_grid.size(); begin += chunk) {
                const std::size_t end = std::min(begin + chunk, s_grid.size());
                tasks.push_back(std::async(std::launch::async, count_range, begin, end));
            }
            for (auto& t : tasks) {
                t.get();
            }
        }
    }

    for (ScanRow& row : result.rows) {
        std::vector<std::pair<double, std::size_t>> finest(row.table.size());
        std::transform(row.table.begin(), row.table.end(), finest.begin(),
                       [](const CoverCount& c) { return std::make_pair(c.delta, c.cells); });
        std::sort(finest.begin(), finest.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        if (finest.size() > 5) {
            finest.erase(finest.begin(), finest.end() - 5);
        }
        row.fit = box_dimension_estimate(finest);
        row.flagged = std::abs(row.fit.slope - expected_dim) > tolerance;
    }
    return result;
}

} // namespace cantorlab
