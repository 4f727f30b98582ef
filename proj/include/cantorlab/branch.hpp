#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cantorlab/interval.hpp"
#include "cantorlab/jet.hpp"

namespace cantorlab {

// A contracting inverse branch on a closed domain. Three primitive families
// plus exact-fold composition:
//   affine            x -> p + q x
//   moebius           x -> (a x + b) / (c x + d),  ad - bc != 0
//   perturbed affine  x -> p + q x + eps x^2 (1 - x)
// Every branch is strictly monotone with |derivative| < 1 on its domain;
// construction rejects anything else. Derivative ranges are enclosures
// obtained from monotonicity (affine, moebius) or from critical-point
// analysis of the quadratic derivative (perturbed affine), never sampling.
class Branch {
public:
    enum class Family { Affine, Moebius, PerturbedAffine, Composite };

    static Branch affine(double p, double q, Interval domain);
    static Branch moebius(double a, double b, double c, double d, Interval domain);
    static Branch perturbed_affine(double p, double q, double eps, Interval domain);

    // outer∘inner. Affine/moebius pairs fold exactly (2x2 matrix product);
    // anything involving a perturbed branch stays a composite chain.
    static Branch composed(const Branch& outer, const Branch& inner);

    Family family() const { return family_; }
    const Interval& domain() const { return domain_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    // Sign of the derivative (+1 or -1); constant by monotonicity.
    int orientation() const { return orientation_; }
    bool is_affine() const { return family_ == Family::Affine; }
    // Composite stages, outermost first; empty for primitive families.
    const std::vector<Branch>& parts() const { return parts_; }

    double value(double x) const;
    Jet2 jet(double x) const;           // throws OutOfDomain
    Jet2 jet_unchecked(double x) const;

    // Image of a subinterval of the domain (endpoint evaluation, sorted).
    Interval map_interval(const Interval& sub) const;

    // Enclosure of {|f'(x)| : x in sub}; exact for the primitive families.
    std::pair<double, double> derivative_magnitude_range(const Interval& sub) const;

    std::string describe() const;

private:
    Branch() = default;
    void validate();

    Family family_ = Family::Affine;
    std::vector<double> coeffs_;
    Interval domain_;
    int orientation_ = 1;
    std::vector<Branch> parts_; // composite only, outermost first
};

} // namespace cantorlab
