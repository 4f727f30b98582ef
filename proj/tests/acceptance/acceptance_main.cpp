// Acceptance gate: fourteen end-to-end checks over the whole toolkit, one
// pass/fail line each. Every check either reproduces an analytically known
// value, replays a library result against an independent oracle, or measures
// a scaling exponent at desk scale. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/dimension.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/limit_geometry.hpp"
#include "cantorlab/marstrand.hpp"
#include "cantorlab/report.hpp"
#include "cantorlab/scale_space.hpp"
#include "cantorlab/subcantor.hpp"
#include "cantorlab/sum_image.hpp"
#include "cantorlab/system.hpp"

using namespace cantorlab;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFailure(msg);
}

std::string num(double v) { return format_sig12(v); }

double slope_fit(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Word constant_word(std::size_t len, Sym a) { return Word(len, a); }

// ---- criterion bodies -----------------------------------------------------

// 1. Pressure roots of affine systems against closed forms.
std::string c01_affine_roots() {
    const auto third = pressure_dimension(middle_alpha(1.0 / 3.0), 4);
    const double d3 = std::log(2.0) / std::log(3.0);
    require(std::abs(third.d_lower - d3) < 1e-9 && std::abs(third.d_upper - d3) < 1e-9,
            "middle-third bracket " + num(third.d_lower) + ".." + num(third.d_upper) +
                " misses log2/log3 = " + num(d3));

    const auto golden_sys = pressure_dimension(two_ratio(0.5, 0.25), 4);
    const double dg = -std::log2((std::sqrt(5.0) - 1.0) / 2.0);
    require(std::abs(golden_sys.d_lower - dg) < 1e-8 && std::abs(golden_sys.d_upper - dg) < 1e-8,
            "two_ratio(1/2,1/4) bracket " + num(golden_sys.d_lower) + ".." +
                num(golden_sys.d_upper) + " misses " + num(dg));
    return "log2/log3 = " + num(d3) + " and golden-ratio exponent " + num(dg) + " reproduced";
}

// 2. Bracket nesting and width for the continued-fraction set.
std::string c02_bracket_nesting() {
    const CantorSystem c2 = gauss_digits({1, 2});
    DimensionBracket prev{};
    bool have_prev = false;
    double width8 = 1.0;
    for (int depth : {2, 4, 6, 8}) {
        const auto br = pressure_dimension(c2, depth);
        require(br.d_lower <= br.d_upper, "inverted bracket at depth " + std::to_string(depth));
        if (have_prev) {
            require(br.d_lower >= prev.d_lower - 1e-12 && br.d_upper <= prev.d_upper + 1e-12,
                    "bracket at depth " + std::to_string(depth) + " not nested in depth " +
                        std::to_string(prev.depth));
        }
        prev = br;
        have_prev = true;
        width8 = br.d_upper - br.d_lower;
    }
    require(width8 < 0.02, "depth-8 width " + num(width8) + " not below 0.02");
    return "depth-8 bracket " + num(prev.d_lower) + ".." + num(prev.d_upper) + ", width " +
           num(width8);
}

// 3. Deep-composition convergence: geometric for the nonlinear set,
// identically zero (to roundoff) for affine ones.
std::string c03_limit_geometry_convergence() {
    const CantorSystem c2 = gauss_digits({1, 2});
    const TailWord tail{constant_word(15, 0)};
    std::vector<double> residual(15, 0.0);
    for (int depth = 3; depth <= 14; ++depth)
        residual[static_cast<std::size_t>(depth)] = LimitGeometry(c2, tail, depth).residual();
    double worst = 0.0;
    for (int n = 4; n <= 12; ++n) {
        const double r0 = residual[static_cast<std::size_t>(n)];
        const double r2 = residual[static_cast<std::size_t>(n + 2)];
        require(r0 > 0.0, "zero residual at depth " + std::to_string(n));
        worst = std::max(worst, r2 / r0);
        require(r2 / r0 < 0.25, "ratio " + num(r2 / r0) + " at depth " + std::to_string(n) +
                                    " not below 0.25");
    }

    for (const CantorSystem& sys : {middle_alpha(1.0 / 3.0), two_ratio(0.5, 0.25)}) {
        const TailWord zeros{constant_word(11, 0)};
        for (int depth = 1; depth <= 10; ++depth) {
            const double r = LimitGeometry(sys, zeros, depth).residual();
            require(r < 1e-12, sys.name() + " residual " + num(r) + " at depth " +
                                   std::to_string(depth) + " not below 1e-12");
        }
    }
    return "worst two-step ratio " + num(worst) + ", affine residuals at roundoff";
}

// 4. Compatibility of the deep composition with one renormalization step.
std::string c04_affine_relation() {
    const CantorSystem c2 = gauss_digits({1, 2});
    const TailWord tail{constant_word(15, 0)};
    const auto rep = check_affine_relation(c2, tail, 2, 10);
    require(rep.max_residual <= rep.primary_residual + rep.shifted_residual,
            "relation residual " + num(rep.max_residual) + " above truncation budget " +
                num(rep.primary_residual + rep.shifted_residual));
    return "residual " + num(rep.max_residual) + " within truncation budget " +
           num(rep.primary_residual + rep.shifted_residual);
}

// 5. Sweep counting versus quadratic brute force on random rectangles.
std::string c05_overlap_oracle() {
    std::mt19937_64 rng(501);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> half(1e-4, 0.03);
    std::uniform_int_distribution<std::size_t> msize(2, 500);
    std::uniform_real_distribution<double> smag(0.25, 4.0);

    std::size_t checked = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t m = msize(rng);
        std::vector<DeltaRectangle> rects;
        rects.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double cx = unit(rng), cy = unit(rng), u = half(rng), v = half(rng);
            rects.push_back(DeltaRectangle::from_intervals(Word{}, Word{}, {cx - u, cx + u},
                                                           {cy - v, cy + v}));
        }
        for (int k = 0; k < 100; ++k) {
            const double s = (unit(rng) < 0.5 ? -1.0 : 1.0) * smag(rng);
            std::vector<Interval> proj;
            proj.reserve(m);
            double scale = 1.0;
            for (const auto& r : rects) {
                proj.push_back(r.projected(s));
                scale = std::max({scale, std::abs(proj.back().lo), std::abs(proj.back().hi)});
            }
            const double tol = 1e-12 * scale;
            std::size_t unordered = 0;
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = i + 1; j < m; ++j) {
                    if (std::max(proj[i].lo, proj[j].lo) <= std::min(proj[i].hi, proj[j].hi) + tol)
                        ++unordered;
                }
            }
            const std::size_t expected = 2 * unordered + m;
            const std::size_t got = count_overlaps(rects, s);
            require(got == expected, "instance " + std::to_string(inst) + ", s = " + num(s) +
                                         ": sweep " + std::to_string(got) + " vs brute " +
                                         std::to_string(expected));
            ++checked;
        }
    }
    return std::to_string(checked) + " instance/slope pairs, zero discrepancies";
}

// The overlap integral behaves like c1 * rho * M^2 + c2 * M with M the
// rectangle count, so the implied M-exponent recovered from a raw log-log
// slope m is max(m, (m - 1) / 2), whichever regime dominates.
double implied_exponent(double raw_slope) { return std::max(raw_slope, (raw_slope - 1.0) / 2.0); }

double integral_exponent(const CantorSystem& a, const CantorSystem& b, double ratio, double c0) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 2; k <= 6; ++k) {
        const double rho = std::pow(ratio, k);
        const auto rects = delta_rectangles(a, b, {}, {}, rho, c0);
        pts.emplace_back(std::log(rho), std::log(integral_estimate(rects, 4.0)));
    }
    return implied_exponent(slope_fit(pts));
}

// 6. Scaling exponent of the overlap integral for two dimension regimes.
std::string c06_integral_exponent() {
    const CantorSystem third = middle_alpha(1.0 / 3.0);
    const double e_third = integral_exponent(third, third, 1.0 / 3.0, 2.0);
    const double want_third = -2.0 * std::log(2.0) / std::log(3.0);
    require(std::abs(e_third - want_third) <= 0.15,
            "middle-third exponent " + num(e_third) + " not within 0.15 of " + num(want_third));

    const double alpha = std::pow(2.0, -2.5);
    const CantorSystem p1 = perturbed(middle_alpha(alpha), 0.02);
    const CantorSystem p2 = perturbed(middle_alpha(alpha), -0.015);
    const auto b1 = pressure_dimension(p1, 8);
    const auto b2 = pressure_dimension(p2, 8);
    const double d_sum = 0.5 * (b1.d_lower + b1.d_upper) + 0.5 * (b2.d_lower + b2.d_upper);
    require(std::abs(d_sum - 0.8) <= 0.05,
            "perturbed pair dimension sum " + num(d_sum) + " strayed from 0.8");
    const double e_pert = integral_exponent(p1, p2, alpha, 2.0);
    require(std::abs(e_pert - (-d_sum)) <= 0.15,
            "perturbed exponent " + num(e_pert) + " not within 0.15 of " + num(-d_sum));
    return "exponents " + num(e_third) + " vs " + num(want_third) + " and " + num(e_pert) +
           " vs " + num(-d_sum);
}

// 7. Union lower bound for random sub-families of a delta cover.
std::string c07_union_lower_bound() {
    const double alpha = std::pow(2.0, -2.5);
    const CantorSystem sys = middle_alpha(alpha);
    const double d_sum = 0.8; // two factors of dimension log2/log(1/alpha) = 0.4
    const double delta = std::pow(3.0, -4);
    const double c0 = 2.5;
    const auto all = delta_rectangles(sys, sys, {}, {}, delta, c0);

    std::mt19937_64 rng(701);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> smag(0.25, 4.0);
    std::vector<double> s_values;
    for (int i = 0; i < 20; ++i) s_values.push_back((unit(rng) < 0.5 ? -1.0 : 1.0) * smag(rng));

    double worst_margin = 1e300;
    for (int fam = 0; fam < 50; ++fam) {
        const double keep = 0.3 + 0.6 * unit(rng);
        std::vector<DeltaRectangle> sub;
        for (const auto& r : all)
            if (unit(rng) < keep) sub.push_back(r);
        if (sub.empty()) sub.push_back(all[fam % all.size()]);

        const double b = static_cast<double>(sub.size()) * std::pow(delta, d_sum);
        double c_tilde = 0.0;
        for (double s : s_values) {
            c_tilde = std::max(c_tilde, static_cast<double>(count_overlaps(sub, s)) *
                                            std::pow(delta, d_sum));
        }
        const double rhs =
            (1.0 / c0) * (1.0 / c_tilde) * b * b * std::pow(delta, 1.0 - d_sum) / 4.0;
        for (double s : s_values) {
            const double lhs = projection_union_measure(sub, s);
            require(lhs >= rhs, "family " + std::to_string(fam) + ", s = " + num(s) +
                                    ": union " + num(lhs) + " below bound " + num(rhs));
            worst_margin = std::min(worst_margin, lhs / rhs);
        }
    }
    return "50 sub-families x 20 slopes, worst union/bound ratio " + num(worst_margin);
}

// 8. Interval-family comparison lemmas on seeded random inputs.
std::string c08_family_lemmas() {
    std::mt19937_64 rng(801);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(1, 100);

    for (int it = 0; it < 1000; ++it) {
        const double eps = 1e-3 + 0.05 * unit(rng);
        const double lambda = 1.0 + 4.0 * unit(rng) + 1e-6;
        const double nu = 3.0 * unit(rng);
        const std::size_t n = count(rng);
        std::vector<Interval> base, derived;
        for (std::size_t i = 0; i < n; ++i) {
            const double len = eps * (1.0 + (lambda - 1.0) * (0.01 + 0.98 * unit(rng)));
            const double c = 10.0 * unit(rng);
            base.push_back({c - len / 2, c + len / 2});
            const double dlen = eps * (1.0 + 2.0 * unit(rng) + 1e-9);
            const double dc = c + nu * eps * (2.0 * unit(rng) - 1.0);
            derived.push_back({dc - dlen / 2, dc + dlen / 2});
        }
        const auto rep = shrunk_family_union_bound(base, derived, eps, lambda, nu);
        require(rep.holds, "shifted-family bound failed on iteration " + std::to_string(it) +
                               ": " + num(rep.lhs) + " < " + num(rep.rhs));
    }

    for (int it = 0; it < 1000; ++it) {
        const double nu = 0.02 + 0.98 * unit(rng);
        const std::size_t n = count(rng);
        std::vector<Interval> base, subsets;
        for (std::size_t i = 0; i < n; ++i) {
            const double len = 0.01 + unit(rng);
            const double lo = 10.0 * unit(rng);
            base.push_back({lo, lo + len});
            const double klen = len * (nu + (1.0 - nu) * unit(rng));
            const double off = (len - klen) * unit(rng);
            subsets.push_back({lo + off, lo + off + klen});
        }
        const auto rep = subset_family_union_bound(base, subsets, nu);
        require(rep.holds, "subset-family bound failed on iteration " + std::to_string(it) +
                               ": " + num(rep.lhs) + " < " + num(rep.rhs));
    }
    return "2 x 1000 seeded families, both bounds hold everywhere";
}

// 9. Box-count slopes of arithmetic sums across a slope grid.
std::string c09_dimension_scan() {
    const double alpha = std::pow(2.0, -2.5);
    const CantorSystem p1 = perturbed(middle_alpha(alpha), 0.02);
    const CantorSystem p2 = perturbed(middle_alpha(alpha), -0.015);
    const auto b1 = pressure_dimension(p1, 8);
    const auto b2 = pressure_dimension(p2, 8);
    const double expected = 0.5 * (b1.d_lower + b1.d_upper) + 0.5 * (b2.d_lower + b2.d_upper);
    require(std::abs(expected - 0.8) <= 0.05, "certified sum " + num(expected) + " far from 0.8");

    std::vector<double> grid;
    for (int i = 0; i < 25; ++i) grid.push_back(-4.0 + (4.0 - 0.25) * i / 24.0);
    for (int i = 0; i < 25; ++i) grid.push_back(0.25 + (4.0 - 0.25) * i / 24.0);
    std::vector<double> deltas;
    for (int k = 1; k <= 6; ++k) deltas.push_back(std::pow(2.0, -7.0 * k / 3.0));

    const auto scan =
        dimension_scan(MapFamily::Sum, p1, p2, grid, deltas, expected, 0.1, 2.5, 2);
    std::size_t ok = 0;
    for (const auto& row : scan.rows)
        if (!row.flagged) ++ok;
    require(scan.rows.size() == grid.size(), "scan dropped grid rows");
    require(10 * ok >= 9 * grid.size(), "only " + std::to_string(ok) + "/" +
                                            std::to_string(grid.size()) +
                                            " slopes within 0.1 of " + num(expected));
    return std::to_string(ok) + "/" + std::to_string(grid.size()) + " slopes within 0.1 of " +
           num(expected) + " down to delta = 2^-14";
}

// 10. Arithmetic-sum saturation of the middle-third set.
std::string c10_sum_saturation() {
    const CantorSystem third = middle_alpha(1.0 / 3.0);
    const BivariateMap sum1 = BivariateMap::sum(1.0);
    for (int k = 2; k <= 6; ++k) {
        const double delta = std::pow(3.0, -k);
        const auto merged = image_cover(sum1, third, third, delta, 2.0);
        require(merged.size() == 1, "cover at 3^-" + std::to_string(k) + " has " +
                                        std::to_string(merged.size()) + " components");
        require(std::abs(merged[0].lo) <= 1e-12 && std::abs(merged[0].hi - 2.0) <= 1e-12,
                "cover at 3^-" + std::to_string(k) + " is [" + num(merged[0].lo) + ", " +
                    num(merged[0].hi) + "], not [0, 2]");
    }
    return "single component [0, 2] at every scale 3^-2..3^-6";
}

// 11. Sub-window extraction: certified bracket inside the window and an
// exact replay of the greedy trim.
std::string c11_extraction() {
    const CantorSystem third = middle_alpha(1.0 / 3.0);
    const double a = 0.3, b = 0.45;
    const auto res = extract_subcantor(third, a, b);
    const auto audit = pressure_dimension(res.system, 2);
    require(a < audit.d_lower && audit.d_upper < b,
            "depth-2 bracket " + num(audit.d_lower) + ".." + num(audit.d_upper) +
                " escapes the window");

    // Replay the trim: same candidates, weights, stable ordering, pivot.
    const double mid = 0.5 * (a + b);
    const auto words = third.shift().words(res.n);
    std::vector<std::pair<double, Word>> weighted;
    for (const Word& w : words) {
        if (!third.shift().allowed(w.back(), res.marker_start)) continue;
        Word probe = w;
        probe.push_back(res.marker_start);
        weighted.emplace_back(third.derivative_bounds_on_cylinder(probe).second, w);
    }
    std::vector<std::size_t> order(weighted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return weighted[x].first > weighted[y].first;
    });
    double total = 0.0;
    for (const auto& [lam, w] : weighted) total += std::pow(lam, -mid);
    std::vector<bool> removed(weighted.size(), false);
    std::size_t pivot_idx = weighted.size();
    for (std::size_t k = 0; k < order.size() && total > res.c_hat; ++k) {
        total -= std::pow(weighted[order[k]].first, -mid);
        removed[order[k]] = true;
        pivot_idx = order[k];
    }
    require(pivot_idx < weighted.size() && weighted[pivot_idx].second == res.pivot,
            "pivot word mismatch in the greedy replay");
    std::vector<Word> kept;
    for (std::size_t i = 0; i < weighted.size(); ++i)
        if (!removed[i]) kept.push_back(weighted[i].second);
    require(kept == res.kept, "kept-word set mismatch in the greedy replay");
    require(total == res.sum_mid, "stopped sum " + num(total) + " != " + num(res.sum_mid));
    require(res.sum_mid <= res.c_hat && res.c_hat < res.sum_mid_with_pivot,
            "greedy stopping inequalities violated");
    require(res.sum_a > 1.0 && res.sum_lambda_mid < 1.0,
            "pressure side conditions violated");
    return std::to_string(res.kept.size()) + " block words, bracket " + num(audit.d_lower) +
           ".." + num(audit.d_upper) + " inside (0.3, 0.45)";
}

// 12. Transfer-map log-derivative: flat for affine systems, bounded away
// from zero for the continued-fraction set, stable under depth.
std::string c12_transfer_profile() {
    for (const CantorSystem& sys : {middle_alpha(1.0 / 3.0), two_ratio(0.5, 0.25)}) {
        Word a = constant_word(13, 0);
        Word b = a;
        b[11] = 1;
        const auto prof = h_prime_one_profile(sys, TailWord{a}, TailWord{b}, 12);
        require(prof.max_abs < 1e-10,
                sys.name() + " profile max " + num(prof.max_abs) + " not below 1e-10");
    }

    const CantorSystem c2 = gauss_digits({1, 2});
    Word a12 = constant_word(13, 0);
    Word b12 = a12;
    b12[11] = 1;
    const double v12 = h_prime_one_profile(c2, TailWord{a12}, TailWord{b12}, 12).max_abs;
    require(v12 > 0.01, "depth-12 profile max " + num(v12) + " not above 0.01");

    Word a14 = constant_word(15, 0);
    Word b14 = a14;
    b14[13] = 1;
    const double v14 = h_prime_one_profile(c2, TailWord{a14}, TailWord{b14}, 14).max_abs;
    require(v14 >= 0.8 * v12 && v14 <= 1.2 * v12,
            "depth-14 value " + num(v14) + " outside 20% of depth-12 value " + num(v12));
    return "affine profiles at roundoff; nonlinear max " + num(v12) + " (depth 12), " +
           num(v14) + " (depth 14)";
}

// 13. Renormalization multipliers compose along concatenated words.
std::string c13_cocycle() {
    const CantorSystem c2 = gauss_digits({1, 2});
    std::mt19937_64 rng(1301);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> extra(1, 5);
    std::uniform_real_distribution<double> smag(0.25, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        RelativeScale pt;
        Word t0, t1;
        for (int i = 0; i < 13; ++i) t0.push_back(static_cast<Sym>(bit(rng)));
        for (int i = 0; i < 13; ++i) t1.push_back(static_cast<Sym>(bit(rng)));
        pt.tail = TailWord{t0};
        pt.tail_p = TailWord{t1};
        pt.s = (unit(rng) < 0.5 ? -1.0 : 1.0) * smag(rng);

        const bool use_first = (it % 2 == 0);
        const Sym start = use_first ? pt.tail.last() : pt.tail_p.last();
        Word u{start};
        for (int i = extra(rng); i > 0; --i) u.push_back(static_cast<Sym>(bit(rng)));
        Word v{u.back()};
        for (int i = extra(rng); i > 0; --i) v.push_back(static_cast<Sym>(bit(rng)));
        Word uv = u;
        uv.insert(uv.end(), v.begin() + 1, v.end());

        RelativeScale seq, comp;
        if (use_first) {
            seq = renormalize_first(c2, renormalize_first(c2, pt, u), v);
            comp = renormalize_first(c2, pt, uv);
        } else {
            seq = renormalize_second(c2, renormalize_second(c2, pt, u), v);
            comp = renormalize_second(c2, pt, uv);
        }
        require(seq.tail.symbols == comp.tail.symbols &&
                    seq.tail_p.symbols == comp.tail_p.symbols,
                "tail mismatch on iteration " + std::to_string(it));
        const double rel =
            std::abs(seq.s - comp.s) / std::max(std::abs(seq.s), std::abs(comp.s));
        require(rel <= 1e-8, "iteration " + std::to_string(it) + ": relative gap " + num(rel));
        worst = std::max(worst, rel);
    }
    return "1000 word pairs, worst relative gap " + num(worst);
}

// 14. Byte-identical artifacts from repeated command-line runs.
std::string c14_determinism() {
    namespace fs = std::filesystem;
    const std::string bin = ACCEPT_CLI_BIN;
    const std::string config = ACCEPT_CONFIG;
    const fs::path base = fs::path("acceptance_rerun");
    std::error_code ec;
    fs::remove_all(base, ec);

    const std::vector<std::string> subs{"dim",     "limitgeom", "marstrand",
                                        "sumscan", "extract",   "recurrence"};
    for (const char* run : {"a", "b"}) {
        for (const std::string& sub : subs) {
            const std::string cmd = "\"" + bin + "\" --config \"" + config + "\" --out \"" +
                                    (base / run).string() + "\" " + sub + " > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            require(rc == 0, sub + " run " + run + " exited with " + std::to_string(rc));
        }
    }

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
        if (entry.path().extension() != ".csv") continue;
        const fs::path other = base / "b" / entry.path().filename();
        require(fs::exists(other), "second run lacks " + entry.path().filename().string());
        std::ifstream fa(entry.path(), std::ios::binary), fb(other, std::ios::binary);
        std::ostringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        require(sa.str() == sb.str(),
                entry.path().filename().string() + " differs between reruns");
        require(!sa.str().empty(), entry.path().filename().string() + " is empty");
        ++compared;
    }
    require(compared >= 9, "only " + std::to_string(compared) + " CSV artifacts compared");
    return std::to_string(compared) + " CSV artifacts byte-identical across reruns";
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        double budget_seconds; // 0 = no stated budget
        std::string (*body)();
    };
    const std::vector<Entry> entries{
        {1, "affine pressure roots", 1.0, c01_affine_roots},
        {2, "bracket nesting", 30.0, c02_bracket_nesting},
        {3, "limit-geometry convergence", 0.0, c03_limit_geometry_convergence},
        {4, "renormalization relation", 0.0, c04_affine_relation},
        {5, "overlap-count oracle", 60.0, c05_overlap_oracle},
        {6, "overlap-integral exponent", 300.0, c06_integral_exponent},
        {7, "projection union lower bound", 0.0, c07_union_lower_bound},
        {8, "interval-family lemmas", 0.0, c08_family_lemmas},
        {9, "sum-image dimension scan", 600.0, c09_dimension_scan},
        {10, "arithmetic-sum saturation", 0.0, c10_sum_saturation},
        {11, "sub-window extraction", 30.0, c11_extraction},
        {12, "transfer-profile discrimination", 0.0, c12_transfer_profile},
        {13, "renormalization cocycle", 0.0, c13_cocycle},
        {14, "artifact determinism", 0.0, c14_determinism},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail;
        try {
            detail = e.body();
        } catch (const std::exception& ex) {
            pass = false;
            detail = ex.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (pass && e.budget_seconds > 0.0 && secs > e.budget_seconds) {
            pass = false;
            detail += " [over the " + num(e.budget_seconds) + " s budget]";
        }
        if (!pass) ++failures;
        std::printf("[%s] %02d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", e.id, e.label,
                    detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/14 criteria passed\n", 14 - failures);
    return failures;
}
