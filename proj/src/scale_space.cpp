#include "cantorlab/scale_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "cantorlab/errors.hpp"
#include "cantorlab/limit_geometry.hpp"
#include "cantorlab/marstrand.hpp"

namespace cantorlab {

namespace {

int clamp_depth(const RenormConfig& cfg, const TailWord& tail) {
    return std::min(cfg.lg_depth, static_cast<int>(tail.size()) - 1);
}

void validate_point(const RelativeScale& point) {
    if (point.s == 0.0) throw ConfigError("relative scale must be nonzero");
    if (point.tail.symbols.empty() || point.tail_p.symbols.empty()) {
        throw ConfigError("scale-space tails must be nonempty");
    }
}

void check_join(const TailWord& tail, const Word& word) {
    if (word.empty()) throw InadmissibleJoin("renormalization word is empty");
    if (word.front() != tail.last()) {
        throw InadmissibleJoin("word " + word_to_string(word) + " does not start at the tail letter " +
                               std::to_string(tail.last()));
    }
}

TailWord extend_tail(TailWord tail, const Word& word, const RenormConfig& cfg) {
    if (cfg.max_tail == 0) throw ConfigError("max_tail must be positive");
    tail.symbols.insert(tail.symbols.end(), word.begin() + 1, word.end());
    if (tail.symbols.size() > cfg.max_tail) {
        tail.symbols.erase(tail.symbols.begin(),
                           tail.symbols.end() - static_cast<std::ptrdiff_t>(cfg.max_tail));
    }
    return tail;
}

std::vector<Word> words_from_letter(const CantorSystem& sys, Sym first, double rho, double c0,
                                    const EnumBudget& budget) {
    std::vector<Word> out;
    for (Word& w : sys.words_at_scale(rho, c0, budget)) {
        if (w.front() == first) out.push_back(std::move(w));
    }
    if (out.empty()) {
        throw EmptyScale("no word from letter " + std::to_string(first) + " at scale " +
                         std::to_string(rho));
    }
    return out;
}

// Unit rescale of the tail's limit geometry: kappa maps I(theta_0) onto [0,1].
struct UnitGeometry {
    LimitGeometry k;
    double lo, len;

    UnitGeometry(const CantorSystem& sys, const TailWord& tail, const RenormConfig& cfg)
        : k(sys, tail, clamp_depth(cfg, tail)), lo(k.domain().lo), len(k.domain().length()) {}

    double kappa(double x) const { return (k.value(x) - lo) / len; }
    Interval kappa_image(const Interval& iv) const {
        const Interval img = k.image_of(iv);
        return {(img.lo - lo) / len, (img.hi - lo) / len};
    }
};

} // namespace

BasepointChoice::BasepointChoice(const CantorSystem& sys) {
    for (Sym a = 0; a < sys.alphabet_size(); ++a) {
        words_.push_back(sys.omega_word(a));
        points_.push_back(sys.basepoint(a));
    }
}

BasepointChoice::BasepointChoice(const CantorSystem& sys, std::vector<Word> words)
    : words_(std::move(words)) {
    if (words_.size() != static_cast<std::size_t>(sys.alphabet_size())) {
        throw ConfigError("need exactly one basepoint word per letter");
    }
    for (Sym a = 0; a < sys.alphabet_size(); ++a) {
        const Word& w = words_[static_cast<std::size_t>(a)];
        if (w.empty() || w.front() != a) {
            throw ConfigError("basepoint word for letter " + std::to_string(a) +
                              " must start with that letter");
        }
        points_.push_back(sys.periodic_point(w).first);
    }
}

int orientation_sign(const CantorSystem& sys, const Word& word) {
    if (word.empty()) throw InadmissibleWord("empty word has no orientation");
    if (word.size() < 2) return 1;
    return sys.composed_branch(word).orientation();
}

double relative_cylinder_size(const CantorSystem& sys, const TailWord& tail, const Word& word,
                              const RenormConfig& cfg) {
    check_join(tail, word);
    UnitGeometry g(sys, tail, cfg);
    return g.kappa_image(sys.cylinder_interval(word)).length();
}

RelativeScale renormalize_first(const CantorSystem& sys, const RelativeScale& point,
                                const Word& word, const RenormConfig& cfg) {
    validate_point(point);
    const double size = relative_cylinder_size(sys, point.tail, word, cfg);
    RelativeScale out = point;
    out.s = point.s * static_cast<double>(orientation_sign(sys, word)) / size;
    out.tail = extend_tail(point.tail, word, cfg);
    return out;
}

RelativeScale renormalize_second(const CantorSystem& sys_p, const RelativeScale& point,
                                 const Word& word, const RenormConfig& cfg) {
    validate_point(point);
    const double size = relative_cylinder_size(sys_p, point.tail_p, word, cfg);
    RelativeScale out = point;
    out.s = point.s * static_cast<double>(orientation_sign(sys_p, word)) * size;
    out.tail_p = extend_tail(point.tail_p, word, cfg);
    return out;
}

double relative_projection(const CantorSystem& sys, const CantorSystem& sys_p,
                           const RelativeScale& point, const BasepointChoice& base,
                           const BasepointChoice& base_p, double x, double x_p,
                           const RenormConfig& cfg) {
    validate_point(point);
    UnitGeometry g(sys, point.tail, cfg);
    UnitGeometry gp(sys_p, point.tail_p, cfg);
    const double b = base.point(point.tail.last());
    const double bp = base_p.point(point.tail_p.last());
    return g.kappa(x) - g.kappa(b) - point.s * (gp.kappa(x_p) - gp.kappa(bp));
}

std::size_t relative_overlap_count(const CantorSystem& sys, const CantorSystem& sys_p,
                                   const RelativeScale& point, double delta, double c0,
                                   const RenormConfig& cfg, const EnumBudget& budget) {
    validate_point(point);
    UnitGeometry g(sys, point.tail, cfg);
    UnitGeometry gp(sys_p, point.tail_p, cfg);

    const auto words = words_from_letter(sys, point.tail.last(), delta, c0, budget);
    const auto words_p = words_from_letter(sys_p, point.tail_p.last(), delta, c0, budget);
    if (words.size() > budget.max_words / words_p.size()) {
        throw BudgetExceeded("rectangle count exceeds the word budget");
    }

    std::vector<Interval> xs, ys;
    xs.reserve(words.size());
    ys.reserve(words_p.size());
    for (const Word& w : words) xs.push_back(g.kappa_image(sys.cylinder_interval(w)));
    for (const Word& w : words_p) ys.push_back(gp.kappa_image(sys_p.cylinder_interval(w)));

    std::vector<DeltaRectangle> rects;
    rects.reserve(xs.size() * ys.size());
    for (const Interval& x : xs) {
        for (const Interval& y : ys) {
            rects.push_back(DeltaRectangle::from_intervals({}, {}, x, y));
        }
    }
    return count_overlaps(rects, point.s);
}

GoodScaleReport good_scale_indicator(const CantorSystem& sys, const CantorSystem& sys_p,
                                     const RelativeScale& point, const GoodScaleParams& params,
                                     const RenormConfig& cfg, const EnumBudget& budget) {
    validate_point(point);
    if (params.m < 3) throw ConfigError("scale subdivision m must be at least 3");
    if (!(params.rho > 0.0 && params.rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");

    const double delta = std::pow(params.rho, 1.0 / params.m);
    const double fine_bound = std::pow(params.rho, -params.d_sum / static_cast<double>(params.m));

    GoodScaleReport rep;
    rep.base_count = relative_overlap_count(sys, sys_p, point, delta, params.c0, cfg, budget);
    rep.base_bound = params.c5 * fine_bound;
    rep.condition1 = static_cast<double>(rep.base_count) <= rep.base_bound;
    rep.condition2 = true;

    for (int j = 1; j < params.m; ++j) {
        const double rho_hat = std::pow(params.rho, static_cast<double>(j) / params.m);
        GoodScaleStage stage;
        stage.rho_hat = rho_hat;
        const auto words = words_from_letter(sys, point.tail.last(), rho_hat, params.c0, budget);
        const auto words_p =
            words_from_letter(sys_p, point.tail_p.last(), rho_hat, params.c0, budget);
        if (words.size() > budget.max_words / words_p.size()) {
            throw BudgetExceeded("renormalization pair count exceeds the word budget");
        }
        stage.pair_count = words.size() * words_p.size();
        for (const Word& b : words) {
            const RelativeScale half = renormalize_first(sys, point, b, cfg);
            for (const Word& b_p : words_p) {
                const RelativeScale target = renormalize_second(sys_p, half, b_p, cfg);
                stage.count_sum +=
                    relative_overlap_count(sys, sys_p, target, delta, params.c0, cfg, budget);
            }
        }
        stage.bound = params.c5 * std::pow(rho_hat, -params.d_sum) * fine_bound;
        if (static_cast<double>(stage.count_sum) > stage.bound) rep.condition2 = false;
        rep.stages.push_back(stage);
    }
    return rep;
}

RecurrenceReport empirical_recurrence_map(const CantorSystem& sys, const CantorSystem& sys_p,
                                          const RelativeScale& point,
                                          const std::vector<double>& s_grid,
                                          const GoodScaleParams& params, const RenormConfig& cfg,
                                          const EnumBudget& budget) {
    validate_point(point);
    const auto words = words_from_letter(sys, point.tail.last(), params.rho, params.c0, budget);
    const auto words_p =
        words_from_letter(sys_p, point.tail_p.last(), params.rho, params.c0, budget);
    if (words.size() > budget.max_words / words_p.size()) {
        throw BudgetExceeded("renormalization pair count exceeds the word budget");
    }

    const auto good_at = [&](const RelativeScale& q) {
        return good_scale_indicator(sys, sys_p, q, params, cfg, budget).good();
    };

    // Good sets over the grid per target tail pair, computed on demand.
    using TailKey = std::pair<std::vector<Sym>, std::vector<Sym>>;
    std::map<TailKey, std::vector<char>> good_sets;
    const auto target_good_set = [&](const RelativeScale& target) -> const std::vector<char>& {
        TailKey key{target.tail.symbols, target.tail_p.symbols};
        auto it = good_sets.find(key);
        if (it == good_sets.end()) {
            std::vector<char> flags(s_grid.size(), 0);
            for (std::size_t i = 0; i < s_grid.size(); ++i) {
                RelativeScale q = target;
                q.s = s_grid[i];
                flags[i] = good_at(q) ? 1 : 0;
            }
            it = good_sets.emplace(std::move(key), std::move(flags)).first;
        }
        return it->second;
    };

    RecurrenceReport rep;
    rep.params = params;
    for (double s : s_grid) {
        RecurrenceCell cell;
        cell.s = s;
        RelativeScale at = point;
        at.s = s;
        cell.good = good_at(at);
        if (cell.good) {
            cell.pair_total = words.size() * words_p.size();
            for (const Word& b : words) {
                const RelativeScale half = renormalize_first(sys, at, b, cfg);
                for (const Word& b_p : words_p) {
                    const RelativeScale target = renormalize_second(sys_p, half, b_p, cfg);
                    const auto& flags = target_good_set(target);
                    bool lands = false;
                    for (std::size_t i = 0; i < s_grid.size() && !lands; ++i) {
                        lands = flags[i] && std::abs(target.s - s_grid[i]) <= params.rho;
                    }
                    if (lands) ++cell.pair_good;
                }
            }
            cell.fraction = cell.pair_total == 0
                                ? 0.0
                                : static_cast<double>(cell.pair_good) /
                                      static_cast<double>(cell.pair_total);
        }
        rep.cells.push_back(cell);
    }
    return rep;
}

} // namespace cantorlab
