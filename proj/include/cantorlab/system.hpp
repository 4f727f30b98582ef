#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cantorlab/branch.hpp"
#include "cantorlab/interval.hpp"
#include "cantorlab/subshift.hpp"

namespace cantorlab {

// Caps for word enumeration so scale-driven searches terminate predictably.
struct EnumBudget {
    std::size_t max_words = 2'000'000;
    int max_depth = 64;
};

// A regular Cantor set presented by contracting inverse branches over a
// subshift of finite type: one base interval I(a) per letter and one branch
// per transition (a0, a1) mapping I(a1) onto a compact subinterval of I(a0).
// Construction validates containment, pairwise disjointness of sibling
// images, and uniform contraction.
class CantorSystem {
public:
    static CantorSystem create(std::string name, Subshift shift,
                               std::vector<Interval> base_intervals,
                               std::vector<std::pair<std::pair<Sym, Sym>, Branch>> branches);

    const std::string& name() const { return name_; }
    const Subshift& shift() const { return shift_; }
    int alphabet_size() const { return shift_.alphabet_size(); }
    const Interval& base(Sym a) const { return bases_[static_cast<std::size_t>(a)]; }
    const std::vector<Interval>& bases() const { return bases_; }
    const Branch& branch(Sym a0, Sym a1) const;
    bool all_affine() const { return all_affine_; }
    // Smallest expansion factor min over transitions of 1/max|f'| (> 1).
    double min_expansion() const { return min_expansion_; }

    // I(a) = f_{a0 a1} o ... o f_{a_{n-1} a_n} (I(a_n)); a single letter
    // gives the base interval itself.
    Interval cylinder_interval(const Word& w) const;

    // The composed inverse branch of a word (>= 2 letters); affine and
    // moebius stages fold exactly, anything else stays a composite chain.
    Branch composed_branch(const Word& w) const;

    // Enclosure (inf, sup) of |(g^n)'| over the cylinder of an (n+1)-letter
    // word, as reciprocals of the composed-branch derivative range over the
    // final base interval. A single letter returns (1, 1).
    std::pair<double, double> derivative_bounds_on_cylinder(const Word& w) const;

    // Fixed point of the cyclic composition of `w` (last -> first transition
    // required) and the signed eigenvalue 1 / f'_cycle at it.
    std::pair<double, double> periodic_point(const Word& w) const;

    // Nested cylinder containing the point addressed by the prefix.
    Interval address_prefix_interval(const Word& prefix) const { return cylinder_interval(prefix); }

    // All admissible words whose cylinder length lies in [rho/c0, c0*rho],
    // lexicographic order, pruned by monotonicity of length under extension.
    std::vector<Word> words_at_scale(double rho, double c0,
                                     const EnumBudget& budget = {}) const;
    // Same window applied to lengths scaled by `stretch` (embedded copies).
    std::vector<Word> words_at_scale_stretched(double rho, double c0, double stretch,
                                               const EnumBudget& budget = {}) const;

    // min over words with `letters` letters of inf|f'_w| / sup|f'_w|; equals
    // 1 for affine systems. Empirical stand-in for the bounded-distortion
    // constant, certified only at the audited depth.
    double distortion_ratio(int letters) const;

    // Shortest lexicographically-first cyclic word through `a`, used as the
    // canonical basepoint address.
    Word omega_word(Sym a) const { return shift_.omega_word(a); }
    // The periodic point addressed by omega_word(a).
    double basepoint(Sym a) const;

private:
    CantorSystem(std::string name, Subshift shift) : name_(std::move(name)), shift_(std::move(shift)) {}

    std::string name_;
    Subshift shift_;
    std::vector<Interval> bases_;
    std::vector<std::optional<Branch>> branches_; // index a0 * k + a1
    bool all_affine_ = true;
    double min_expansion_ = 0.0;
};

// Built-in generators.
// Two affine branches with ratios r1, r2 (r1 + r2 < 1) on [0, 1]:
// I(0) = [0, r1], I(1) = [1 - r2, 1], full 2-shift.
CantorSystem two_ratio(double r1, double r2);
// two_ratio(alpha, alpha): the middle-(1 - 2 alpha) set.
CantorSystem middle_alpha(double alpha);
// Continued-fraction Cantor set with digits restricted to `digits`; base
// intervals are the convex hulls of the digit cylinders so every branch
// x -> 1/(a + x) is uniformly contracting on its stated domain.
CantorSystem gauss_digits(const std::vector<int>& digits);
// Replace every affine branch p + qx by p + qx + eps x^2 (1 - x); requires
// an all-affine base system and small enough eps to keep the images nested
// and disjoint (revalidated on construction).
CantorSystem perturbed(const CantorSystem& base, double eps);

} // namespace cantorlab
