#pragma once

namespace cantorlab {

// Second order jet of a scalar map at a point: value, first and second
// derivative. Composition follows the chain rule for second derivatives, so
// curvature data propagates exactly through branch compositions instead of
// being approximated by differencing.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

// Jet of outer∘inner where `outer` is the jet of the outer map at inner.v.
inline Jet2 compose_jets(const Jet2& outer, const Jet2& inner) {
    return {outer.v,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2};
}

inline Jet2 identity_jet(double x) { return {x, 1.0, 0.0}; }

// Jet of the inverse map at f(u), given u and the jet of f at u (d1 != 0).
inline Jet2 inverse_jet(double u, const Jet2& f_at_u) {
    const double inv = 1.0 / f_at_u.d1;
    return {u, inv, -f_at_u.d2 * inv * inv * inv};
}

} // namespace cantorlab
