#pragma once

#include "rk2/scalar.hpp"
#include "rk2/torsor.hpp"

namespace rk2 {

/// Element of the one-dimensional measure line attached to (alpha, beta):
/// the coefficient c against the image of the canonical torsor base point.
struct MeasureElement {
    BreveElement alpha, beta;
    Scalar c;

    bool is_zero() const { return c.is_zero(); }

    friend bool operator==(const MeasureElement& a, const MeasureElement& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.c == b.c;
    }
    friend bool operator!=(const MeasureElement& a, const MeasureElement& b) {
        return !(a == b);
    }
};

inline MeasureElement mu_base(const BreveElement& alpha, const BreveElement& beta) {
    return {alpha, beta, Scalar(1)};
}

/// The multiplicative embedding of the torsor into its measure line.
inline MeasureElement mu_of_torsor(const TorsorElement& h) {
    return {h.alpha, h.beta, r_pow(h.t)};
}

inline MeasureElement mu_tensor(const MeasureElement& a, const MeasureElement& b) {
    if (a.beta != b.alpha) throw MismatchError("measure tensor endpoint mismatch");
    return {a.alpha, b.beta, a.c * b.c};
}

inline MeasureElement mu_inverse(const MeasureElement& m) {
    if (m.is_zero()) throw DivisionByZero("inverse of the zero measure");
    return {m.beta, m.alpha, m.c.inverse()};
}

/// Value of a fiber measure at the fiber point p; the canonical base element
/// takes the value r^{-p}.
inline Scalar mu_fiber_value(const MeasureElement& eta, std::int64_t p) {
    if (eta.alpha.finite || eta.beta.finite || eta.alpha.n != eta.beta.n + 1)
        throw MismatchError("not a fiber measure line");
    return eta.c * r_pow(-p);
}

inline MeasureElement mu_gamma_act(GammaElement bp, const MeasureElement& m) {
    return {circ(bp, m.alpha), circ(bp, m.beta),
            m.c * r_pow(gamma_offset(bp, m.alpha, m.beta))};
}

inline MeasureElement mu_c_act(std::int64_t k, const MeasureElement& m) {
    return {shear(k, m.alpha), shear(k, m.beta), m.c * r_pow(c_offset(k, m.alpha, m.beta))};
}

/// Transport along the reflection isomorphism of measure lines.
inline MeasureElement mu_perp(const MeasureElement& m, GammaElement g) {
    return {perp(m.alpha, g), perp(m.beta, g), m.c * r_pow(perp_offset(m.alpha, m.beta, g))};
}

} // namespace rk2
