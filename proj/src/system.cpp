#include "cantorlab/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

constexpr double kGeomTol = 1e-12;

} // namespace

CantorSystem CantorSystem::create(std::string name, Subshift shift,
                                  std::vector<Interval> base_intervals,
                                  std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches) {
    const int k = shift.alphabet_size();
    if (static_cast<int>(base_intervals.size()) != k) {
        throw InvalidSystem("need exactly one base interval per letter");
    }
    for (const auto& iv : base_intervals) {
        if (!(iv.lo < iv.hi)) throw InvalidSystem("base interval is empty or degenerate");
    }

    CantorSystem sys(std::move(name), std::move(shift));
    sys.bases_ = std::move(base_intervals);
    sys.branches_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), std::nullopt);

    for (auto& [key, br] : branches) {
        auto [a0, a1] = key;
        if (a0 < 0 || a0 >= k || a1 < 0 || a1 >= k) {
            throw InvalidSystem("branch transition outside alphabet");
        }
        if (!sys.shift_.allowed(a0, a1)) {
            throw InvalidSystem("branch given for a forbidden transition (" + std::to_string(a0) +
                                "," + std::to_string(a1) + ")");
        }
        auto& slot = sys.branches_[static_cast<std::size_t>(a0) * static_cast<std::size_t>(k) +
                                   static_cast<std::size_t>(a1)];
        if (slot) throw InvalidSystem("duplicate branch for one transition");
        slot = std::move(br);
    }

    double min_expansion = std::numeric_limits<double>::infinity();
    for (Sym a0 = 0; a0 < k; ++a0) {
        std::vector<Interval> images;
        for (Sym a1 : sys.shift_.successors(a0)) {
            const auto& slot = sys.branches_[static_cast<std::size_t>(a0) * static_cast<std::size_t>(k) +
                                             static_cast<std::size_t>(a1)];
            if (!slot) {
                throw InvalidSystem("missing branch for transition (" + std::to_string(a0) + "," +
                                    std::to_string(a1) + ")");
            }
            const Branch& br = *slot;
            const Interval& dom = sys.bases_[static_cast<std::size_t>(a1)];
            if (!br.domain().contains(dom, kGeomTol)) {
                throw InvalidSystem("branch domain does not cover the base interval of letter " +
                                    std::to_string(a1));
            }
            auto [dmin, dmax] = br.derivative_magnitude_range(dom);
            if (!(dmax < 1.0)) {
                throw InvalidSystem("branch for (" + std::to_string(a0) + "," + std::to_string(a1) +
                                    ") is not contracting on the base interval");
            }
            if (!(dmin > 0.0)) {
                throw InvalidSystem("branch derivative degenerates on the base interval");
            }
            min_expansion = std::min(min_expansion, 1.0 / dmax);
            Interval img = br.map_interval(dom);
            if (!sys.bases_[static_cast<std::size_t>(a0)].contains(img, kGeomTol)) {
                throw InvalidSystem("image of transition (" + std::to_string(a0) + "," +
                                    std::to_string(a1) + ") escapes its base interval");
            }
            images.push_back(img);
            if (br.family() != Branch::Family::Affine) sys.all_affine_ = false;
        }
        std::sort(images.begin(), images.end(),
                  [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        for (std::size_t i = 0; i + 1 < images.size(); ++i) {
            if (!(images[i].hi < images[i + 1].lo)) {
                throw InvalidSystem("sibling cylinder images of letter " + std::to_string(a0) +
                                    " are not pairwise disjoint");
            }
        }
    }
    sys.min_expansion_ = min_expansion;
    return sys;
}

const Branch& CantorSystem::branch(Sym a0, Sym a1) const {
    const int k = shift_.alphabet_size();
    if (a0 < 0 || a0 >= k || a1 < 0 || a1 >= k || !shift_.allowed(a0, a1)) {
        throw InadmissibleWord("no branch for transition (" + std::to_string(a0) + "," +
                               std::to_string(a1) + ")");
    }
    return *branches_[static_cast<std::size_t>(a0) * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(a1)];
}

Interval CantorSystem::cylinder_interval(const Word& w) const {
    if (!shift_.admissible(w)) throw InadmissibleWord("word " + word_to_string(w));
    Interval img = base(w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;) {
        img = branch(w[i], w[i + 1]).map_interval(img);
    }
    return img;
}

Branch CantorSystem::composed_branch(const Word& w) const {
    if (w.size() < 2) throw InadmissibleWord("composition needs at least two letters");
    if (!shift_.admissible(w)) throw InadmissibleWord("word " + word_to_string(w));
    Branch cur = branch(w[w.size() - 2], w[w.size() - 1]);
    for (std::size_t i = w.size() - 2; i-- > 0;) {
        cur = Branch::composed(branch(w[i], w[i + 1]), cur);
    }
    return cur;
}

std::pair<double, double> CantorSystem::derivative_bounds_on_cylinder(const Word& w) const {
    if (!shift_.admissible(w)) throw InadmissibleWord("word " + word_to_string(w));
    double lo = 1.0, hi = 1.0;
    Interval img = base(w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;) {
        const Branch& br = branch(w[i], w[i + 1]);
        auto [mn, mx] = br.derivative_magnitude_range(img);
        lo *= mn;
        hi *= mx;
        img = br.map_interval(img);
    }
    // |f'_w| in [lo, hi] over the final base, so the expanding return map
    // has |derivative| in [1/hi, 1/lo] over the cylinder.
    return {1.0 / hi, 1.0 / lo};
}

std::pair<double, double> CantorSystem::periodic_point(const Word& w) const {
    if (!shift_.cyclically_admissible(w)) {
        throw NotCyclicallyAdmissible("word " + word_to_string(w));
    }
    Word cyc = w;
    cyc.push_back(w.front());
    const Branch f = composed_branch(cyc);
    const Interval dom = base(w.front());
    double x = dom.mid();
    const double tol = 1e-15 * std::max(1.0, std::abs(dom.hi));
    for (int it = 0; it < 400; ++it) {
        const double nx = f.jet_unchecked(x).v;
        const double dx = std::abs(nx - x);
        x = nx;
        if (dx <= tol) break;
    }
    const double d1 = f.jet_unchecked(x).d1;
    return {x, 1.0 / d1};
}

std::vector<Word> CantorSystem::words_at_scale(double rho, double c0,
                                               const EnumBudget& budget) const {
    return words_at_scale_stretched(rho, c0, 1.0, budget);
}

std::vector<Word> CantorSystem::words_at_scale_stretched(double rho, double c0, double stretch,
                                                         const EnumBudget& budget) const {
    if (!(rho > 0.0 && rho < 1.0)) throw ScaleTooFine("scale must lie in (0, 1)");
    if (!(c0 >= 1.0)) throw ScaleTooFine("width constant must be at least 1");
    if (!(stretch > 0.0)) throw InvalidSystem("embedding stretch must be positive");
    // Closed window with a hair of slack so exact boundary lengths (common
    // in affine systems) are kept regardless of rounding.
    const double lo_bound = (rho / c0) * (1.0 - 1e-12);
    const double hi_bound = (rho * c0) * (1.0 + 1e-12);

    std::vector<Word> out;
    std::size_t visited = 0;

    struct Node {
        Word w;
        std::optional<Branch> f; // composed branch of w, absent for one letter
        Interval cyl;
    };
    // Explicit stack, children pushed in reverse so that traversal emits in
    // lexicographic order (prefix first).
    std::vector<Node> stack;
    for (Sym a = shift_.alphabet_size() - 1; a >= 0; --a) {
        stack.push_back({Word{a}, std::nullopt, base(a)});
    }
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (++visited > budget.max_words) {
            throw ScaleTooFine("scale enumeration exceeded the word budget");
        }
        const double len = node.cyl.length() * stretch;
        if (len < lo_bound) continue; // extensions only shrink
        if (len <= hi_bound) out.push_back(node.w);
        if (static_cast<int>(node.w.size()) >= budget.max_depth) {
            throw ScaleTooFine("scale enumeration exceeded the depth budget");
        }
        const auto& succ = shift_.successors(node.w.back());
        for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
            Node child;
            child.w = node.w;
            child.w.push_back(*it);
            const Branch& step = branch(node.w.back(), *it);
            child.f = node.f ? Branch::composed(*node.f, step) : step;
            child.cyl = child.f->map_interval(base(*it));
            stack.push_back(std::move(child));
        }
    }
    return out;
}

double CantorSystem::distortion_ratio(int letters) const {
    double worst = 1.0;
    for (const Word& w : shift_.words(letters)) {
        auto [lo, hi] = derivative_bounds_on_cylinder(w);
        worst = std::min(worst, lo / hi);
    }
    return worst;
}

double CantorSystem::basepoint(Sym a) const { return periodic_point(omega_word(a)).first; }

CantorSystem two_ratio(double r1, double r2) {
    if (!(r1 > 0.0 && r2 > 0.0 && r1 + r2 < 1.0)) {
        throw InvalidSystem("two_ratio needs r1, r2 > 0 with r1 + r2 < 1");
    }
    Subshift shift = Subshift::full(2);
    std::vector<Interval> bases{{0.0, r1}, {1.0 - r2, 1.0}};
    std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
    for (Sym b = 0; b < 2; ++b) {
        branches.push_back({{0, b}, Branch::affine(0.0, r1, bases[static_cast<std::size_t>(b)])});
        branches.push_back({{1, b}, Branch::affine(1.0 - r2, r2, bases[static_cast<std::size_t>(b)])});
    }
    std::string name = "two_ratio(" + std::to_string(r1) + "," + std::to_string(r2) + ")";
    return CantorSystem::create(std::move(name), std::move(shift), std::move(bases),
                                std::move(branches));
}

CantorSystem middle_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw InvalidSystem("middle_alpha needs 0 < alpha < 1/2");
    }
    CantorSystem sys = two_ratio(alpha, alpha);
    // Rebuild under the canonical name.
    std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
    for (Sym a = 0; a < 2; ++a) {
        for (Sym b = 0; b < 2; ++b) branches.push_back({{a, b}, sys.branch(a, b)});
    }
    return CantorSystem::create("middle_alpha(" + std::to_string(alpha) + ")", sys.shift(),
                                sys.bases(), std::move(branches));
}

CantorSystem gauss_digits(const std::vector<int>& digits) {
    if (digits.empty()) throw InvalidSystem("gauss_digits needs at least one digit");
    std::vector<int> ds = digits;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (ds.front() < 1) throw InvalidSystem("continued-fraction digits must be >= 1");
    if (ds.size() == 1) {
        throw InvalidSystem("a single digit gives a single point, not a Cantor set");
    }

    // Convex hull H of the digit-restricted continued-fraction set is the
    // fixed point of H -> hull over digits of 1/(d + H). Start from a safe
    // superset and iterate; the map contracts endpoints geometrically.
    Interval H{1.0 / (static_cast<double>(ds.back()) + 1.0), 1.0 / static_cast<double>(ds.front())};
    for (int it = 0; it < 200; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int d : ds) {
            const double a = 1.0 / (static_cast<double>(d) + H.hi);
            const double b = 1.0 / (static_cast<double>(d) + H.lo);
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
        const double move = std::max(std::abs(lo - H.lo), std::abs(hi - H.hi));
        H = {lo, hi};
        if (move < 1e-16) break;
    }

    const int k = static_cast<int>(ds.size());
    Subshift shift = Subshift::full(k);
    std::vector<Interval> bases;
    for (int d : ds) {
        bases.push_back({1.0 / (static_cast<double>(d) + H.hi), 1.0 / (static_cast<double>(d) + H.lo)});
    }
    std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
    for (Sym i = 0; i < k; ++i) {
        for (Sym j = 0; j < k; ++j) {
            // Digit d of letter i: x -> 1/(d + x), domain the base of letter j.
            branches.push_back({{i, j}, Branch::moebius(0.0, 1.0, 1.0, static_cast<double>(ds[static_cast<std::size_t>(i)]),
                                                        bases[static_cast<std::size_t>(j)])});
        }
    }
    std::string name = "gauss_digits(";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) name += ",";
        name += std::to_string(ds[i]);
    }
    name += ")";
    return CantorSystem::create(std::move(name), std::move(shift), std::move(bases),
                                std::move(branches));
}

CantorSystem perturbed(const CantorSystem& base_sys, double eps) {
    std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches;
    const int k = base_sys.alphabet_size();
    for (Sym a0 = 0; a0 < k; ++a0) {
        for (Sym a1 : base_sys.shift().successors(a0)) {
            const Branch& br = base_sys.branch(a0, a1);
            if (br.family() != Branch::Family::Affine) {
                throw InvalidSystem("perturbed() needs an all-affine base system");
            }
            const double p = br.coeffs()[0], q = br.coeffs()[1];
            branches.push_back({{a0, a1}, Branch::perturbed_affine(p, q, eps, br.domain())});
        }
    }
    std::string name = "perturbed(" + base_sys.name() + "," + std::to_string(eps) + ")";
    return CantorSystem::create(std::move(name), base_sys.shift(), base_sys.bases(),
                                std::move(branches));
}

} // namespace cantorlab
