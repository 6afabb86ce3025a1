#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rk2/rank2.hpp"

namespace rk2 {

/// Element of the central extension attached to the base point alpha: a group
/// element beta together with a point of the torsor [alpha, beta ∘ alpha].
struct HeisTilde {
    BreveElement alpha;
    GammaElement beta;
    TorsorElement h;

    friend bool operator==(const HeisTilde& a, const HeisTilde& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.h == b.h;
    }
    friend bool operator!=(const HeisTilde& a, const HeisTilde& b) { return !(a == b); }
};

inline HeisTilde tilde_make(const BreveElement& alpha, GammaElement beta, std::int64_t t) {
    return {alpha, beta, TorsorElement{alpha, circ(beta, alpha), t}};
}

inline HeisTilde tilde_identity(const BreveElement& alpha) {
    return tilde_make(alpha, GammaElement{0, 0}, 0);
}

inline HeisTilde tilde_mul(const HeisTilde& x, const HeisTilde& y) {
    if (x.alpha != y.alpha) throw MismatchError("base point mismatch in multiplication");
    return {x.alpha, x.beta + y.beta, torsor_compose(x.h, gamma_act_torsor(x.beta, y.h))};
}

inline HeisTilde tilde_inverse(const HeisTilde& x) {
    return {x.alpha, -x.beta, torsor_inverse(gamma_act_torsor(-x.beta, x.h))};
}

/// Quadruple coordinates for the extended group; m = 0 is the three-parameter
/// subgroup.
struct HeisQuad {
    std::int64_t a = 0, b = 0, c = 0, m = 0;
    friend bool operator==(const HeisQuad&, const HeisQuad&) = default;
};

inline HeisQuad quad_mul(const HeisQuad& x, const HeisQuad& y) {
    return {x.a + y.a + x.m * y.b, x.b + y.b,
            x.c + y.c + x.a * y.b + (y.b * (y.b - 1) / 2) * x.m, x.m + y.m};
}

inline HeisQuad quad_identity() { return {}; }

inline HeisQuad quad_inverse(const HeisQuad& x) {
    // solve x * y = e
    HeisQuad y;
    y.m = -x.m;
    y.b = -x.b;
    y.a = -x.a - x.m * y.b;
    y.c = -x.c - x.a * y.b - (y.b * (y.b - 1) / 2) * x.m;
    return y;
}

inline HeisQuad quad_commutator(const HeisQuad& x, const HeisQuad& y) {
    return quad_mul(quad_mul(x, y), quad_mul(quad_inverse(x), quad_inverse(y)));
}

/// Coordinate isomorphism at the base point (0,-inf): (a,b,c) maps to the
/// pair ((b ⊕ a), d_b - c) with d_b the staircase-normalized point.
inline HeisTilde heis_iso(std::int64_t a, std::int64_t b, std::int64_t c) {
    return tilde_make(BreveElement::column(0), GammaElement{b, a}, -c);
}

struct HeisTriple {
    std::int64_t a = 0, b = 0, c = 0;
    friend bool operator==(const HeisTriple&, const HeisTriple&) = default;
};

inline HeisTriple heis_iso_inv(const HeisTilde& x) {
    if (x.alpha != BreveElement::column(0))
        throw MismatchError("coordinate isomorphism lives at the base point (0,-inf)");
    return {x.beta.p, x.beta.n, -x.h.t};
}

/// Faithful matrix model of the quadruple group inside the unitriangular
/// 4x4 integer matrices.
inline std::array<std::array<std::int64_t, 4>, 4> matrix_rep(const HeisQuad& x) {
    return {{{1, x.m, x.a, x.c},
             {0, 1, x.b, x.b * (x.b - 1) / 2},
             {0, 0, 1, x.b},
             {0, 0, 0, 1}}};
}

inline std::array<std::array<std::int64_t, 4>, 4> matrix_mul(
    const std::array<std::array<std::int64_t, 4>, 4>& A,
    const std::array<std::array<std::int64_t, 4>, 4>& B) {
    std::array<std::array<std::int64_t, 4>, 4> C{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) C[i][j] += A[i][k] * B[k][j];
    return C;
}

/// The section-change automorphism in quadruple coordinates.
inline HeisQuad phi_k(std::int64_t k, const HeisQuad& x) {
    return {x.a + k * x.b, x.b, x.c + (x.b * (x.b - 1) / 2) * k, x.m};
}

/// Base-point transport: conjugation by any point g of [alpha2, alpha1];
/// the result does not depend on the choice of g (tested, not assumed).
inline HeisTilde lambda_transport(const HeisTilde& x, const BreveElement& alpha2,
                                  std::int64_t g_coord = 0) {
    TorsorElement g{alpha2, x.alpha, g_coord};
    TorsorElement moved = gamma_act_torsor(x.beta, torsor_inverse(g));
    return {alpha2, x.beta, torsor_compose(torsor_compose(g, x.h), moved)};
}

/// The loop-rotation automorphism of the group at a fixed base point.
inline HeisTilde c_act_tilde(std::int64_t m, const HeisTilde& x) {
    HeisTilde rotated{shear(m, x.alpha), shear(m, x.beta), c_act_torsor(m, x.h)};
    return lambda_transport(rotated, x.alpha);
}

/// Element of the extended group: a pair (f, m) acting through the rotation.
struct HeisExt {
    HeisTilde f;
    std::int64_t m = 0;
    friend bool operator==(const HeisExt&, const HeisExt&) = default;
};

inline HeisExt ext_identity(const BreveElement& alpha) { return {tilde_identity(alpha), 0}; }

inline HeisExt ext_mul(const HeisExt& x, const HeisExt& y) {
    return {tilde_mul(x.f, c_act_tilde(x.m, y.f)), x.m + y.m};
}

inline HeisExt ext_inverse(const HeisExt& x) {
    return {c_act_tilde(-x.m, tilde_inverse(x.f)), -x.m};
}

/// Quadruple coordinates realized at the base point (0,-inf).
inline HeisExt ext_from_quad(const HeisQuad& q) {
    return {heis_iso(q.a, q.b, q.c), q.m};
}

inline HeisQuad quad_from_ext(const HeisExt& x) {
    HeisTriple t = heis_iso_inv(x.f);
    return {t.a, t.b, t.c, x.m};
}

// ---------------------------------------------------------------------------
// Actions on the rank-2 spaces.
// ---------------------------------------------------------------------------

/// (beta, h) acting on a function: slots translate, measures transport along
/// beta and twist by the inverse central parameter.
inline RankTwoFunction act_tilde(const HeisTilde& g, const RankTwoFunction& q) {
    if (g.alpha != q.alpha()) throw MismatchError("base point mismatch in the action");
    auto [lo, hi] = q.work_window();
    std::vector<RankOneFunction> gs;
    for (std::int64_t k = lo; k <= hi; ++k) {
        Scalar w = r_pow(gamma_offset(g.beta, BreveElement::column(k + 1), q.alpha()) - g.h.t);
        gs.push_back(q.slot_product(k).translated(g.beta.p).with_fiber(k + g.beta.n).scaled(w));
    }
    return RankTwoFunction::from_normalized(q.alpha(), q.staircase().translated(g.beta),
                                            lo + g.beta.n, std::move(gs), q.below_mode());
}

/// Dual action on distributions; normal form is preserved slotwise.
inline RankTwoDistribution act_tilde(const HeisTilde& g, const RankTwoDistribution& s) {
    if (g.alpha != s.alpha()) throw MismatchError("base point mismatch in the action");
    std::vector<std::pair<std::int64_t, RankOneDistribution>> terms;
    for (const auto& [k, d] : s.terms()) {
        Scalar w = r_pow(gamma_offset(g.beta, s.alpha(), BreveElement::column(k + 1)) + g.h.t);
        terms.emplace_back(k + g.beta.n, d.translated(g.beta.p).scaled(w));
    }
    return RankTwoDistribution::reduce_normalized(s.alpha(), terms);
}

/// The rotation action on spaces at the distinguished base point (0,-inf),
/// transported to a general base point through an arbitrary nonzero measure;
/// the choice cancels (tested).
inline RankTwoFunction c_act_space(std::int64_t m, const RankTwoFunction& q,
                                   const Scalar& transport = Scalar(1)) {
    const BreveElement a0 = BreveElement::column(0);
    MeasureElement down{q.alpha(), a0, transport};
    RankTwoFunction at0 = q.alpha() == a0 ? q : retarget_alpha(q, down);
    auto [lo, hi] = at0.work_window();
    std::vector<RankOneFunction> gs;
    for (std::int64_t k = lo; k <= hi; ++k) {
        Scalar w = r_pow(c_offset(m, BreveElement::column(k + 1), a0));
        gs.push_back(at0.slot_product(k).translated(m * k).scaled(w));
    }
    RankTwoFunction moved = RankTwoFunction::from_normalized(
        a0, at0.staircase().sheared(m), lo, std::move(gs), at0.below_mode());
    if (q.alpha() == a0) return moved;
    return retarget_alpha(moved, mu_inverse(down));
}

inline RankTwoDistribution c_act_space(std::int64_t m, const RankTwoDistribution& s,
                                       const Scalar& transport = Scalar(1)) {
    const BreveElement a0 = BreveElement::column(0);
    MeasureElement down{a0, s.alpha(), transport};
    RankTwoDistribution at0 = s.alpha() == a0 ? s : retarget_alpha(s, down);
    std::vector<std::pair<std::int64_t, RankOneDistribution>> terms;
    for (const auto& [k, d] : at0.terms()) {
        Scalar w = r_pow(c_offset(m, a0, BreveElement::column(k + 1)));
        terms.emplace_back(k, d.translated(m * k).scaled(w));
    }
    RankTwoDistribution moved = RankTwoDistribution::reduce_normalized(a0, terms);
    if (s.alpha() == a0) return moved;
    return retarget_alpha(moved, mu_inverse(down));
}

inline RankTwoFunction act_ext(const HeisExt& g, const RankTwoFunction& q) {
    return act_tilde(g.f, c_act_space(g.m, q));
}
inline RankTwoDistribution act_ext(const HeisExt& g, const RankTwoDistribution& s) {
    return act_tilde(g.f, c_act_space(g.m, s));
}

// ---------------------------------------------------------------------------
// Reflection isomorphisms of the groups.
// ---------------------------------------------------------------------------

/// (beta, h) -> (-beta, transported h) over the reflected base point.
inline HeisTilde rho_iso(const HeisTilde& x, GammaElement gamma) {
    TorsorElement eps = perp_torsor(x.h, gamma);
    // endpoints: (alpha^perp, (beta ∘ alpha)^perp) = (alpha^perp, (-beta) ∘ alpha^perp)
    return {perp(x.alpha, gamma), -x.beta, eps};
}

/// Extended version; requires the reflecting element to be vertical so the
/// rotation is preserved.
inline HeisExt varrho_iso(const HeisExt& x, GammaElement gamma) {
    if (gamma.n != 0)
        throw MismatchError("extended reflection requires a vertical gamma");
    return {rho_iso(x.f, gamma), x.m};
}

} // namespace rk2
