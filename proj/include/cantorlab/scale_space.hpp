#pragma once

#include <cstddef>
#include <vector>

#include "cantorlab/subshift.hpp"
#include "cantorlab/system.hpp"

namespace cantorlab {

// A point of the relative scale space: one tail of recent past per system
// plus the relative scale s between the two rescaled limit sets. Clamped to
// a compact window s lives in [-R, -1/R] u [1/R, R].
struct RelativeScale {
    TailWord tail;   // first system, last() is the active letter
    TailWord tail_p; // second system
    double s = 1.0;  // nonzero
};

// Knobs for the limit-geometry evaluations behind renormalization and
// projection. Compositions are capped at lg_depth (deep chains of nonlinear
// branches lose precision faster than the truncation residual shrinks);
// tails are cut from the left once they exceed max_tail symbols.
struct RenormConfig {
    int lg_depth = 12;
    std::size_t max_tail = 128;
};

// One fixed forward word per letter, each starting with its letter and
// cyclically admissible; the periodic point it addresses anchors the fiber
// coordinate. Defaults to omega_word(a).
class BasepointChoice {
public:
    explicit BasepointChoice(const CantorSystem& sys);
    BasepointChoice(const CantorSystem& sys, std::vector<Word> words);

    const Word& word(Sym a) const { return words_[static_cast<std::size_t>(a)]; }
    double point(Sym a) const { return points_[static_cast<std::size_t>(a)]; }

private:
    std::vector<Word> words_;
    std::vector<double> points_;
};

// Orientation sign of the composed inverse branch of a word: the product of
// the branch derivative signs, +1 for a single letter.
int orientation_sign(const CantorSystem& sys, const Word& word);

// Relative size |I^theta(word)| of a cylinder under the tail's limit
// geometry: length of k(I(word)) over length of I(theta_0). Equals
// |I(word)| / |I(theta_0)| for affine systems.
double relative_cylinder_size(const CantorSystem& sys, const TailWord& tail, const Word& word,
                              const RenormConfig& cfg = {});

// The renormalization operators. `word` must start at the tail's last
// letter; the tail grows by the rest of the word and s is multiplied by
//   first system:  eps / |I^theta(word)|
//   second system: eps' * |I'^theta'(word')|
// with eps the orientation sign. Multipliers compose exactly along
// concatenations evaluated at matched truncation depths.
RelativeScale renormalize_first(const CantorSystem& sys, const RelativeScale& point,
                                const Word& word, const RenormConfig& cfg = {});
RelativeScale renormalize_second(const CantorSystem& sys_p, const RelativeScale& point,
                                 const Word& word, const RenormConfig& cfg = {});

// Fiber coordinate of (x, x') at a scale-space point: with kappa the limit
// geometry rescaled to map I(theta_0) onto [0, 1],
//   t = kappa(x) - kappa(b) - s * (kappa'(x') - kappa'(b'))
// where b, b' are the basepoints of the active letters. The image of
// I(theta_0) then has length 1 and that of I'(theta_0') has length |s|.
double relative_projection(const CantorSystem& sys, const CantorSystem& sys_p,
                           const RelativeScale& point, const BasepointChoice& base,
                           const BasepointChoice& base_p, double x, double x_p,
                           const RenormConfig& cfg = {});

// N_delta at a scale-space point: ordered pairs (diagonal included) of
// delta-scale cylinder pairs, one factor each, whose slope-s projections
// under the rescaled limit geometries intersect. Words are enumerated at
// absolute cylinder scale delta (window constant c0) and restricted to
// those starting at the active letters.
std::size_t relative_overlap_count(const CantorSystem& sys, const CantorSystem& sys_p,
                                   const RelativeScale& point, double delta, double c0,
                                   const RenormConfig& cfg = {}, const EnumBudget& budget = {});

struct GoodScaleStage {
    double rho_hat = 0.0;
    std::size_t pair_count = 0; // renormalization words examined at rho_hat
    std::size_t count_sum = 0;  // sum of overlap counts at the images
    double bound = 0.0;
};

struct GoodScaleReport {
    bool condition1 = false;
    bool condition2 = false;
    std::size_t base_count = 0; // overlap count at the point itself
    double base_bound = 0.0;
    std::vector<GoodScaleStage> stages;

    bool good() const { return condition1 && condition2; }
};

struct GoodScaleParams {
    double rho = 0.0;   // working scale
    int m = 3;          // scale subdivision, at least 3
    double c5 = 1.0;    // empirical stand-in for the existential constant
    double d_sum = 0.0; // d + d', e.g. pressure-bracket midpoints
    double c0 = 2.0;    // scale window constant
};

// The two good-scale conditions at a point:
//  (1) N_{rho^(1/m)}(point) <= c5 * rho^-(d+d')/m
//  (2) for each rho_hat in {rho^(1/m), ..., rho^((m-1)/m)}, the sum of
//      N_{rho^(1/m)} over both-system renormalizations by word pairs at
//      scale rho_hat starting at the active letters stays below
//      c5 * rho_hat^-(d+d') * rho^-(d+d')/m.
GoodScaleReport good_scale_indicator(const CantorSystem& sys, const CantorSystem& sys_p,
                                     const RelativeScale& point, const GoodScaleParams& params,
                                     const RenormConfig& cfg = {}, const EnumBudget& budget = {});

struct RecurrenceCell {
    double s = 0.0;
    bool good = false;          // indicator verdict at the base tails
    std::size_t pair_total = 0; // renormalization word pairs examined
    std::size_t pair_good = 0;  // pairs whose image lands near the target's good set
    double fraction = 0.0;      // pair_good / pair_total, 0 when not good
};

struct RecurrenceReport {
    GoodScaleParams params;
    std::vector<RecurrenceCell> cells;
};

// Empirical surrogate for the scale recurrence property: for every grid s
// that the indicator marks good, renormalize by all word pairs at scale rho
// starting at the active letters and record the fraction whose image scale
// lands within rho of a good grid value for the image tails. Grid values
// outside the good set get fraction 0, not an error.
RecurrenceReport empirical_recurrence_map(const CantorSystem& sys, const CantorSystem& sys_p,
                                          const RelativeScale& point,
                                          const std::vector<double>& s_grid,
                                          const GoodScaleParams& params,
                                          const RenormConfig& cfg = {},
                                          const EnumBudget& budget = {});

} // namespace cantorlab
