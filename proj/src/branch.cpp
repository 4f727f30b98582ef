#include "cantorlab/branch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

constexpr double kDomainSlack = 1e-9;

bool in_domain(const Interval& dom, double x) {
    return x >= dom.lo - kDomainSlack * std::max(1.0, std::abs(dom.lo)) &&
           x <= dom.hi + kDomainSlack * std::max(1.0, std::abs(dom.hi));
}

// Derivative of the perturbed family: q + eps(2x - 3x^2). Its extrema on an
// interval sit at the endpoints or at the vertex x = 1/3.
std::pair<double, double> perturbed_deriv_minmax(double q, double eps, const Interval& sub) {
    auto d = [&](double x) { return q + eps * (2.0 * x - 3.0 * x * x); };
    double mn = std::min(d(sub.lo), d(sub.hi));
    double mx = std::max(d(sub.lo), d(sub.hi));
    if (sub.contains(1.0 / 3.0)) {
        const double dv = d(1.0 / 3.0);
        mn = std::min(mn, dv);
        mx = std::max(mx, dv);
    }
    return {mn, mx};
}

} // namespace

Branch Branch::affine(double p, double q, Interval domain) {
    Branch b;
    b.family_ = Family::Affine;
    b.coeffs_ = {p, q};
    b.domain_ = domain;
    b.validate();
    return b;
}

Branch Branch::moebius(double a, double b, double c, double d, Interval domain) {
    Branch br;
    br.family_ = Family::Moebius;
    br.coeffs_ = {a, b, c, d};
    br.domain_ = domain;
    br.validate();
    return br;
}

Branch Branch::perturbed_affine(double p, double q, double eps, Interval domain) {
    Branch b;
    b.family_ = Family::PerturbedAffine;
    b.coeffs_ = {p, q, eps};
    b.domain_ = domain;
    b.validate();
    return b;
}

Branch Branch::composed(const Branch& outer, const Branch& inner) {
    // Fold exactly when both sides live in the moebius group (affine is the
    // c = 0 case). Matrix convention: (a b; c d) acts as x -> (ax+b)/(cx+d).
    auto as_matrix = [](const Branch& br, double m[4]) -> bool {
        if (br.family_ == Family::Affine) {
            m[0] = br.coeffs_[1];
            m[1] = br.coeffs_[0];
            m[2] = 0.0;
            m[3] = 1.0;
            return true;
        }
        if (br.family_ == Family::Moebius) {
            m[0] = br.coeffs_[0];
            m[1] = br.coeffs_[1];
            m[2] = br.coeffs_[2];
            m[3] = br.coeffs_[3];
            return true;
        }
        return false;
    };

    double mo[4], mi[4];
    if (as_matrix(outer, mo) && as_matrix(inner, mi)) {
        double m[4] = {
            mo[0] * mi[0] + mo[1] * mi[2],
            mo[0] * mi[1] + mo[1] * mi[3],
            mo[2] * mi[0] + mo[3] * mi[2],
            mo[2] * mi[1] + mo[3] * mi[3],
        };
        if (m[2] == 0.0) {
            // Normalize the affine form p + q x with q = m0/m3, p = m1/m3.
            return affine(m[1] / m[3], m[0] / m[3], inner.domain_);
        }
        return moebius(m[0], m[1], m[2], m[3], inner.domain_);
    }

    Branch b;
    b.family_ = Family::Composite;
    b.domain_ = inner.domain_;
    auto append = [&](const Branch& src) {
        if (src.family_ == Family::Composite) {
            b.parts_.insert(b.parts_.end(), src.parts_.begin(), src.parts_.end());
        } else {
            b.parts_.push_back(src);
        }
    };
    append(outer);
    append(inner);
    b.orientation_ = 1;
    for (const auto& part : b.parts_) b.orientation_ *= part.orientation();
    return b;
}

void Branch::validate() {
    if (!(domain_.lo < domain_.hi)) {
        throw InvalidBranch("branch domain is empty or degenerate");
    }
    switch (family_) {
    case Family::Affine: {
        const double q = coeffs_[1];
        if (q == 0.0) throw InvalidBranch("affine branch has zero slope");
        if (std::abs(q) >= 1.0) {
            throw InvalidBranch("affine branch is not contracting (|q| >= 1)");
        }
        orientation_ = q > 0.0 ? 1 : -1;
        break;
    }
    case Family::Moebius: {
        const double a = coeffs_[0], b = coeffs_[1], c = coeffs_[2], d = coeffs_[3];
        const double det = a * d - b * c;
        if (det == 0.0) throw InvalidBranch("moebius branch is singular (ad - bc = 0)");
        if (c != 0.0) {
            const double pole = -d / c;
            if (domain_.contains(pole)) {
                throw InvalidBranch("moebius branch has a pole inside its domain");
            }
        }
        // f'(x) = det / (cx + d)^2; fixed sign off the pole.
        const double den_lo = c * domain_.lo + d;
        const double dlo = det / (den_lo * den_lo);
        orientation_ = dlo > 0.0 ? 1 : -1;
        auto [mn, mx] = derivative_magnitude_range(domain_);
        if (mx >= 1.0) {
            throw InvalidBranch("moebius branch is not contracting on its domain");
        }
        (void)mn;
        break;
    }
    case Family::PerturbedAffine: {
        const double q = coeffs_[1], eps = coeffs_[2];
        auto [mn, mx] = perturbed_deriv_minmax(q, eps, domain_);
        if (mn <= 0.0 && mx >= 0.0) {
            throw InvalidBranch("perturbed branch loses monotonicity on its domain");
        }
        orientation_ = mn > 0.0 ? 1 : -1;
        if (std::max(std::abs(mn), std::abs(mx)) >= 1.0) {
            throw InvalidBranch("perturbed branch is not contracting on its domain");
        }
        break;
    }
    case Family::Composite:
        break;
    }
}

double Branch::value(double x) const { return jet(x).v; }

Jet2 Branch::jet(double x) const {
    if (!in_domain(domain_, x)) {
        throw OutOfDomain("point " + std::to_string(x) + " outside branch domain [" +
                          std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
    }
    return jet_unchecked(x);
}

Jet2 Branch::jet_unchecked(double x) const {
    switch (family_) {
    case Family::Affine: {
        const double p = coeffs_[0], q = coeffs_[1];
        return {p + q * x, q, 0.0};
    }
    case Family::Moebius: {
        const double a = coeffs_[0], b = coeffs_[1], c = coeffs_[2], d = coeffs_[3];
        const double den = c * x + d;
        const double det = a * d - b * c;
        const double v = (a * x + b) / den;
        const double d1 = det / (den * den);
        const double d2 = -2.0 * c * det / (den * den * den);
        return {v, d1, d2};
    }
    case Family::PerturbedAffine: {
        const double p = coeffs_[0], q = coeffs_[1], eps = coeffs_[2];
        const double v = p + q * x + eps * x * x * (1.0 - x);
        const double d1 = q + eps * (2.0 * x - 3.0 * x * x);
        const double d2 = eps * (2.0 - 6.0 * x);
        return {v, d1, d2};
    }
    case Family::Composite: {
        Jet2 cur = identity_jet(x);
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
            cur = compose_jets(it->jet_unchecked(cur.v), cur);
        }
        return cur;
    }
    }
    throw InvalidBranch("unreachable branch family");
}

Interval Branch::map_interval(const Interval& sub) const {
    if (family_ == Family::Composite) {
        Interval img = sub;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
            img = it->map_interval(img);
        }
        return img;
    }
    const double va = jet_unchecked(sub.lo).v;
    const double vb = jet_unchecked(sub.hi).v;
    return hull_of(va, vb);
}

std::pair<double, double> Branch::derivative_magnitude_range(const Interval& sub) const {
    switch (family_) {
    case Family::Affine: {
        const double m = std::abs(coeffs_[1]);
        return {m, m};
    }
    case Family::Moebius: {
        // |f'| = |det| / (cx + d)^2 is monotone in |cx + d| so its extrema
        // occur at the endpoints of sub.
        const double c = coeffs_[2], d = coeffs_[3];
        const double det = std::abs(coeffs_[0] * coeffs_[3] - coeffs_[1] * coeffs_[2]);
        const double da = c * sub.lo + d;
        const double db = c * sub.hi + d;
        const double va = det / (da * da);
        const double vb = det / (db * db);
        return {std::min(va, vb), std::max(va, vb)};
    }
    case Family::PerturbedAffine: {
        auto [mn, mx] = perturbed_deriv_minmax(coeffs_[1], coeffs_[2], sub);
        const double amn = std::min(std::abs(mn), std::abs(mx));
        const double amx = std::max(std::abs(mn), std::abs(mx));
        // Monotone on the domain, so mn and mx share a sign.
        return {amn, amx};
    }
    case Family::Composite: {
        // Chain rule enclosure: product of stage ranges over the exact
        // nested images (each stage sees the true image interval, so the
        // enclosure is tight up to per-stage tightness).
        double lo = 1.0, hi = 1.0;
        Interval img = sub;
        for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
            auto [mn, mx] = it->derivative_magnitude_range(img);
            lo *= mn;
            hi *= mx;
            img = it->map_interval(img);
        }
        return {lo, hi};
    }
    }
    throw InvalidBranch("unreachable branch family");
}

std::string Branch::describe() const {
    std::ostringstream out;
    switch (family_) {
    case Family::Affine:
        out << "affine(p=" << coeffs_[0] << ", q=" << coeffs_[1] << ")";
        break;
    case Family::Moebius:
        out << "moebius(" << coeffs_[0] << ", " << coeffs_[1] << ", " << coeffs_[2] << ", "
            << coeffs_[3] << ")";
        break;
    case Family::PerturbedAffine:
        out << "perturbed(p=" << coeffs_[0] << ", q=" << coeffs_[1] << ", eps=" << coeffs_[2]
            << ")";
        break;
    case Family::Composite:
        out << "composite[" << parts_.size() << "]";
        break;
    }
    return out.str();
}

} // namespace cantorlab
