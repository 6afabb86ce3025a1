#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rk2/value_group.hpp"

namespace rk2 {

/// Subset of the group meeting every column in an upward half-line:
/// column n starts at slope*n + intercept unless overridden by an exception.
class Staircase {
public:
    Staircase() = default;
    Staircase(std::int64_t slope, std::int64_t intercept,
              std::map<std::int64_t, std::int64_t> exceptions = {})
        : slope_(slope), intercept_(intercept) {
        for (auto [n, z] : exceptions)
            if (z != slope_ * n + intercept_) exceptions_.emplace(n, z);
    }

    static Staircase standard() { return Staircase(); }

    std::int64_t floor_at(std::int64_t n) const {
        auto it = exceptions_.find(n);
        return it != exceptions_.end() ? it->second : slope_ * n + intercept_;
    }

    std::int64_t slope() const { return slope_; }
    std::int64_t intercept() const { return intercept_; }
    const std::map<std::int64_t, std::int64_t>& exceptions() const { return exceptions_; }

    /// beta + Z, columns shifted and lifted.
    Staircase translated(GammaElement beta) const {
        std::map<std::int64_t, std::int64_t> ex;
        for (auto [n, z] : exceptions_) ex.emplace(n + beta.n, z + beta.p);
        return Staircase(slope_, intercept_ + beta.p - slope_ * beta.n, std::move(ex));
    }

    /// m ⋄ Z, every column lifted by m*n.
    Staircase sheared(std::int64_t m) const {
        std::map<std::int64_t, std::int64_t> ex;
        for (auto [n, z] : exceptions_) ex.emplace(n, z + m * n);
        return Staircase(slope_ + m, intercept_, std::move(ex));
    }

    friend bool operator==(const Staircase& a, const Staircase& b) {
        return a.slope_ == b.slope_ && a.intercept_ == b.intercept_ &&
               a.exceptions_ == b.exceptions_;
    }
    friend bool operator!=(const Staircase& a, const Staircase& b) { return !(a == b); }

private:
    std::int64_t slope_ = 0, intercept_ = 0;
    std::map<std::int64_t, std::int64_t> exceptions_;
};

namespace detail {

constexpr std::int64_t kNegInf = INT64_MIN / 4;
constexpr std::int64_t kPosInf = INT64_MAX / 4;

/// Half-open integer interval [lo, hi) with optional infinite ends.
struct ColumnRange {
    std::int64_t lo = kNegInf; // kNegInf when unbounded below
    std::int64_t hi = kPosInf; // kPosInf when unbounded above
    bool empty() const { return lo >= hi; }
};

/// The finitely many columns of R(alpha, beta) = { g : alpha > g >= beta },
/// for alpha >= beta.
class Region {
public:
    Region(const BreveElement& alpha, const BreveElement& beta) : alpha_(alpha), beta_(beta) {
        if (!(alpha >= beta)) throw MismatchError("region endpoints out of order");
        n_min_ = beta.n;
        n_max_ = alpha.finite ? alpha.n : alpha.n - 1;
    }

    std::int64_t n_min() const { return n_min_; }
    std::int64_t n_max() const { return n_max_; } // inclusive; may be < n_min (empty)

    ColumnRange column(std::int64_t n) const {
        ColumnRange cr;
        if (n < n_min_ || n > n_max_) {
            cr.lo = 0;
            cr.hi = 0;
            return cr;
        }
        if (n == beta_.n && beta_.finite) cr.lo = beta_.p;
        if (n == alpha_.n && alpha_.finite) cr.hi = alpha_.p;
        return cr;
    }

private:
    BreveElement alpha_, beta_;
    std::int64_t n_min_, n_max_;
};

/// Signed count |A \ Ref| - |Ref \ A| for the clipped tails
/// A = [max(a,lo), hi) and Ref = [max(ref,lo), hi) inside one column.
inline std::int64_t tail_signed_count(const ColumnRange& cr, std::int64_t a, std::int64_t ref) {
    if (cr.empty()) return 0;
    std::int64_t ca = std::max(a, cr.lo), cref = std::max(ref, cr.lo);
    if (cr.hi == kPosInf) return cref - ca;
    auto len = [&](std::int64_t start) { return std::max<std::int64_t>(0, cr.hi - start); };
    return len(ca) - len(cref);
}

/// d0 evaluated on the set meeting column n in the tail starting at start(n),
/// clipped to R(alpha,beta); the normalizing reference is the standard
/// staircase.  Requires alpha >= beta.
template <class StartFn>
std::int64_t d0_of_tails(const BreveElement& alpha, const BreveElement& beta, StartFn start) {
    Region reg(alpha, beta);
    std::int64_t sum = 0;
    for (std::int64_t n = reg.n_min(); n <= reg.n_max(); ++n)
        sum += tail_signed_count(reg.column(n), start(n), 0);
    return sum;
}

} // namespace detail

/// Point of the torsor attached to the pair (alpha, beta): the canonical
/// base point (normalized on the standard staircase) shifted by t.
struct TorsorElement {
    BreveElement alpha, beta;
    std::int64_t t = 0;

    friend bool operator==(const TorsorElement& a, const TorsorElement& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.t == b.t;
    }
    friend bool operator!=(const TorsorElement& a, const TorsorElement& b) { return !(a == b); }

    std::string to_string() const {
        return "[" + alpha.to_string() + "," + beta.to_string() + "]+" + std::to_string(t);
    }
};

inline TorsorElement torsor_base(const BreveElement& alpha, const BreveElement& beta) {
    return {alpha, beta, 0};
}

/// Composition along a common endpoint; canonical base points compose to the
/// canonical base point, so coordinates add.
inline TorsorElement torsor_compose(const TorsorElement& a, const TorsorElement& b) {
    if (a.beta != b.alpha) throw MismatchError("torsor composition endpoint mismatch");
    return {a.alpha, b.beta, a.t + b.t};
}

/// The unique partner with h ⊗ h^{-1} = 0.
inline TorsorElement torsor_inverse(const TorsorElement& h) {
    return {h.beta, h.alpha, -h.t};
}

/// Coordinate offset of the translation action:
/// beta'(base(alpha,beta)) = base(beta'∘alpha, beta'∘beta) + gamma_offset.
/// On reversed endpoints the dual pairing flips the sign of the primal
/// offset, which is itself -d0(translated reference set).
inline std::int64_t gamma_offset(GammaElement bp, const BreveElement& alpha,
                                 const BreveElement& beta) {
    if (alpha >= beta)
        return -detail::d0_of_tails(circ(bp, alpha), circ(bp, beta),
                                    [&](std::int64_t) { return bp.p; });
    return detail::d0_of_tails(circ(bp, beta), circ(bp, alpha),
                               [&](std::int64_t) { return bp.p; });
}

/// Coordinate offset of the loop-rotation action m ⋄ -.
inline std::int64_t c_offset(std::int64_t m, const BreveElement& alpha,
                             const BreveElement& beta) {
    if (alpha >= beta)
        return -detail::d0_of_tails(shear(m, alpha), shear(m, beta),
                                    [&](std::int64_t n) { return m * n; });
    return detail::d0_of_tails(shear(m, beta), shear(m, alpha),
                               [&](std::int64_t n) { return m * n; });
}

namespace detail {

/// Base-point shift of the reflection isomorphism on the primal side
/// (alpha >= beta): the canonical base point maps to base + kappa.
inline std::int64_t perp_kappa(const BreveElement& alpha, const BreveElement& beta,
                               GammaElement g) {
    Region src(alpha, beta);
    BreveElement a1 = perp(beta, g), b1 = perp(alpha, g); // a1 >= b1
    return d0_of_tails(a1, b1, [&](std::int64_t m) {
        std::int64_t n = -g.n - m; // source column reflecting onto column m
        ColumnRange cr = src.column(n);
        std::int64_t s = std::max<std::int64_t>(cr.lo, 0); // start of Z0 ∩ R in column n
        return 1 - g.p - s;
    });
}

} // namespace detail

/// Coordinate offset of the reflection isomorphism [alpha,beta] ->
/// [alpha^⊥, beta^⊥]; works for either endpoint order.
inline std::int64_t perp_offset(const BreveElement& alpha, const BreveElement& beta,
                                GammaElement g) {
    if (alpha >= beta) return detail::perp_kappa(alpha, beta, g);
    return -detail::perp_kappa(beta, alpha, g);
}

inline TorsorElement gamma_act_torsor(GammaElement bp, const TorsorElement& h) {
    return {circ(bp, h.alpha), circ(bp, h.beta), h.t + gamma_offset(bp, h.alpha, h.beta)};
}

inline TorsorElement c_act_torsor(std::int64_t m, const TorsorElement& h) {
    return {shear(m, h.alpha), shear(m, h.beta), h.t + c_offset(m, h.alpha, h.beta)};
}

inline TorsorElement perp_torsor(const TorsorElement& h, GammaElement g) {
    return {perp(h.alpha, g), perp(h.beta, g), h.t + perp_offset(h.alpha, h.beta, g)};
}

/// The distinguished point normalized on a staircase: d(Z ∩ R) = 0, extended
/// to reversed endpoints by d ⊗ d^{-1} = 0.
inline TorsorElement d_staircase(const Staircase& Z, const BreveElement& b1,
                                 const BreveElement& b2) {
    if (b1 >= b2)
        return {b1, b2,
                -detail::d0_of_tails(b1, b2, [&](std::int64_t n) { return Z.floor_at(n); })};
    return {b1, b2,
            detail::d0_of_tails(b2, b1, [&](std::int64_t n) { return Z.floor_at(n); })};
}

// ---------------------------------------------------------------------------
// Literal counting oracle.
// ---------------------------------------------------------------------------

/// Explicit finite description of one column of a subset: an optional upward
/// tail plus finitely many membership toggles.
struct ColumnSet {
    std::optional<std::int64_t> start; // tail [start, ∞) ∩ column, absent = no tail
    std::vector<std::int64_t> toggles; // points whose membership is flipped
};

/// Per-column description of a subset of R(alpha, beta).
using SetDesc = std::map<std::int64_t, ColumnSet>;

/// d0 of an explicitly described set, by literal point-by-point counting of
/// its symmetric difference with the standard staircase inside the region.
/// Throws ValidationError when the description is not equivalent to the
/// reference (infinite symmetric difference).
inline std::int64_t count_oracle(const SetDesc& A, const BreveElement& alpha,
                                 const BreveElement& beta) {
    detail::Region reg(alpha, beta);
    std::int64_t sum = 0;
    for (std::int64_t n = reg.n_min(); n <= reg.n_max(); ++n) {
        detail::ColumnRange cr = reg.column(n);
        if (cr.empty()) continue;
        auto it = A.find(n);
        const ColumnSet* cs = it != A.end() ? &it->second : nullptr;
        bool has_tail = cs && cs->start.has_value();
        if (cr.hi == detail::kPosInf && !has_tail)
            throw ValidationError("set not equivalent to the reference in column " +
                                  std::to_string(n));
        // Window containing every point where the set and the reference differ.
        std::int64_t wlo = 0, whi = 0; // [wlo, whi)
        auto widen = [&](std::int64_t x) {
            wlo = std::min(wlo, x);
            whi = std::max(whi, x + 1);
        };
        widen(0);
        if (has_tail) widen(*cs->start);
        if (cs)
            for (auto t : cs->toggles) widen(t);
        if (cr.lo != detail::kNegInf) {
            wlo = std::max(wlo, cr.lo);
            widen(cr.lo);
        }
        if (cr.hi != detail::kPosInf) whi = std::min(whi, cr.hi);
        for (std::int64_t x = wlo; x < whi; ++x) {
            if (x < cr.lo || x >= cr.hi) continue;
            bool in_a = has_tail && x >= *cs->start;
            if (cs)
                for (auto t : cs->toggles)
                    if (t == x) in_a = !in_a;
            bool in_ref = x >= 0;
            if (in_a && !in_ref) ++sum;
            if (!in_a && in_ref) --sum;
        }
        if (cs)
            for (auto t : cs->toggles)
                if (t < cr.lo || t >= cr.hi)
                    throw ValidationError("toggle outside the region in column " +
                                          std::to_string(n));
    }
    for (const auto& [n, cs] : A) {
        if (n >= reg.n_min() && n <= reg.n_max()) continue;
        if (cs.start.has_value() || !cs.toggles.empty())
            throw ValidationError("set description outside the region in column " +
                                  std::to_string(n));
    }
    return sum;
}

/// Description of (Z ∩ R) for a staircase, usable with count_oracle.
inline SetDesc set_from_staircase(const Staircase& Z, const BreveElement& alpha,
                                  const BreveElement& beta) {
    detail::Region reg(alpha, beta);
    SetDesc out;
    for (std::int64_t n = reg.n_min(); n <= reg.n_max(); ++n) {
        if (reg.column(n).empty()) continue;
        out[n].start = Z.floor_at(n);
    }
    return out;
}

} // namespace rk2
