#include "cantorlab/subcantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

// Number of admissible words with `letters` letters, via transition counts
// in doubles (saturation is irrelevant long before the budget threshold).
double word_count(const Subshift& shift, int letters) {
    const int k = shift.alphabet_size();
    std::vector<double> v(static_cast<std::size_t>(k), 1.0);
    for (int step = 1; step < letters; ++step) {
        std::vector<double> next(static_cast<std::size_t>(k), 0.0);
        for (Sym s = 0; s < k; ++s)
            for (Sym t : shift.successors(s)) next[static_cast<std::size_t>(t)] += v[static_cast<std::size_t>(s)];
        v = next;
    }
    return std::accumulate(v.begin(), v.end(), 0.0);
}

} // namespace

SubCantorResult extract_subcantor(const CantorSystem& sys, double a, double b,
                                  const ExtractOptions& opts) {
    if (!(a >= 0.0) || !(b > a)) throw ConfigError("dimension window needs 0 <= a < b");
    if (opts.gate_depth < 1) throw ConfigError("gate_depth must be at least 1");
    if (opts.max_block_letters < 2) throw ConfigError("max_block_letters must be at least 2");

    const DimensionBracket gate = pressure_dimension(sys, opts.gate_depth, opts.budget);
    if (b > gate.d_lower) {
        std::ostringstream msg;
        msg << "window top " << b << " exceeds the certified lower dimension bound "
            << gate.d_lower << " of " << sys.name();
        throw TargetAboveDimension(msg.str());
    }

    const double mid = 0.5 * (a + b);
    const double eps = 0.5 * (b - a);
    const double margin = opts.margin >= 0.0 ? opts.margin : 0.5 * eps;
    const Subshift& shift = sys.shift();
    const int k = shift.alphabet_size();

    // Markers: lexicographically first (start, end) whose wrap transition
    // end -> start is allowed, so kept blocks concatenate freely.
    Sym mc = -1;
    Sym md = -1;
    for (Sym c = 0; c < k && mc < 0; ++c)
        for (Sym d = 0; d < k; ++d)
            if (shift.allowed(d, c)) {
                mc = c;
                md = d;
                break;
            }

    std::string obstruction;
    for (int n = 2; n <= opts.max_block_letters; ++n) {
        if (n + 1 > opts.budget.max_depth) break;
        if (word_count(shift, n + 1) > static_cast<double>(opts.budget.max_words)) {
            std::ostringstream msg;
            msg << "enumerating blocks of " << n << " letters needs more than "
                << opts.budget.max_words << " words";
            throw BudgetExceeded(msg.str());
        }

        const double c_hat = 0.9 * sys.distortion_ratio(n + 1);
        // The pivot argument needs the weakest n-application expansion to
        // dominate 2 / c_hat at exponent eps.
        if (!(std::pow(sys.min_expansion(), n * eps) > 2.0 / c_hat)) {
            obstruction = "expansion gate";
            continue;
        }

        // Depth-n pressure root over all words, each weighted through its
        // lexicographically first continuation; it must clear the midpoint
        // with room to spare before the markers are worth the overhead.
        std::vector<double> all_weights;
        for (Word w : shift.words(n)) {
            w.push_back(shift.successors(w.back()).front());
            all_weights.push_back(sys.derivative_bounds_on_cylinder(w).second);
        }
        const double d_n = solve_pressure_root(all_weights);
        if (!(d_n > mid + margin)) {
            obstruction = "depth-" + std::to_string(n) + " pressure root too low";
            continue;
        }

        std::vector<Word> candidates;
        for (Word& w : shift.words_from(mc, n))
            if (w.back() == md) candidates.push_back(std::move(w));
        if (candidates.empty()) {
            obstruction = "no marker-to-marker words";
            continue;
        }

        // Block-branch derivative bounds: the candidate extended by the
        // start marker, i.e. exactly the weights of the system built below.
        std::vector<double> lam(candidates.size());
        std::vector<double> big(candidates.size());
        double total_mid = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            Word wc = candidates[i];
            wc.push_back(mc);
            const auto bounds = sys.derivative_bounds_on_cylinder(wc);
            lam[i] = bounds.first;
            big[i] = bounds.second;
            total_mid += std::pow(big[i], -mid);
        }
        if (!(total_mid > c_hat)) {
            obstruction = "midpoint sum already under the allowance, no pivot";
            continue;
        }

        // Greedy pruning, heaviest block first (least dimension lost per
        // removal); ties fall back to candidate order.
        std::vector<std::size_t> order(candidates.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return big[x] > big[y]; });
        std::vector<char> removed(candidates.size(), 0);
        double running = total_mid;
        std::size_t pivot = candidates.size();
        for (std::size_t oi : order) {
            if (running <= c_hat) break;
            running -= std::pow(big[oi], -mid);
            removed[oi] = 1;
            pivot = oi;
        }

        double sum_mid = 0.0;
        double sum_a = 0.0;
        double sum_lam = 0.0;
        std::vector<Word> kept;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (removed[i]) continue;
            kept.push_back(candidates[i]);
            sum_mid += std::pow(big[i], -mid);
            sum_a += std::pow(big[i], -a);
            sum_lam += std::pow(lam[i], -mid);
        }
        const double with_pivot = sum_mid + std::pow(big[pivot], -mid);
        if (kept.empty() || !(sum_mid <= c_hat) || !(with_pivot > c_hat)) {
            obstruction = "pruning consumed every block";
            continue;
        }
        if (!(sum_a > 1.0)) {
            obstruction = "kept sum at the window bottom fell to " + std::to_string(sum_a);
            continue;
        }
        if (!(sum_lam < 1.0)) {
            obstruction = "kept lower-bound midpoint sum stayed at " + std::to_string(sum_lam);
            continue;
        }

        std::vector<Interval> bases;
        bases.reserve(kept.size());
        for (const Word& y : kept) bases.push_back(sys.cylinder_interval(y));
        std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
        branches.reserve(kept.size() * kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
            Word wc = kept[i];
            wc.push_back(mc);
            const Branch bi = sys.composed_branch(wc);
            for (std::size_t j = 0; j < kept.size(); ++j)
                branches.emplace_back(std::make_pair(static_cast<Sym>(i), static_cast<Sym>(j)), bi);
        }
        std::ostringstream bname;
        bname << sys.name() << "-block" << n << "x" << kept.size();
        CantorSystem block = [&] {
            try {
                return CantorSystem::create(bname.str(), Subshift::full(static_cast<int>(kept.size())),
                                            std::move(bases), std::move(branches));
            } catch (const InvalidSystem& e) {
                // Long blocks can shrink two-block cylinders below double
                // resolution; the construction is sound but unrepresentable.
                std::ostringstream why;
                why << "block system at " << n << " letters lost float resolution: " << e.what();
                throw ScaleTooFine(why.str());
            }
        }();

        const DimensionBracket audit = pressure_dimension(block, 1, opts.budget);
        const double hi_bound = opts.certify_tight ? mid : b;
        if (!(audit.d_lower > a && audit.d_upper < hi_bound)) {
            std::ostringstream why;
            why << "audit bracket [" << audit.d_lower << ", " << audit.d_upper
                << "] escapes (" << a << ", " << hi_bound << ")";
            obstruction = why.str();
            continue;
        }

        return SubCantorResult{n,     mc,      md,    std::move(kept), candidates[pivot], c_hat,
                               sum_mid, with_pivot, sum_a, sum_lam,       std::move(block),  audit};
    }

    std::ostringstream msg;
    msg << "no block length up to " << opts.max_block_letters
        << " satisfied the extraction inequalities for (" << a << ", " << b << ")";
    if (!obstruction.empty()) msg << "; last obstruction: " << obstruction;
    throw DistortionTooWeak(msg.str());
}

} // namespace cantorlab
