#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rk2/measure.hpp"
#include "rk2/rank1.hpp"

namespace rk2 {

enum class BelowMode { Zero, Staircase };

namespace detail {

/// Pairing of a fiber function against the canonical fiber measure.
inline Scalar canonical_eta_pair(const RankOneFunction& f) {
    return eta_pair(f, Scalar(1), Scalar::r());
}

} // namespace detail

/// Element of the rank-2 function space: a window of explicit fiber functions
/// between two staircase-patterned tails.  Slots are stored in normalized
/// form, the per-slot measure folded into the fiber function against the
/// canonical base of its measure line; the tail coefficients are determined
/// by the junction conditions and cached.
class RankTwoFunction {
public:
    struct RawSlot {
        RankOneFunction f;
        MeasureElement mu; // element of the line (k+1, alpha)
    };

    /// Validating constructor from explicit per-slot data with measures.
    static RankTwoFunction make(const BreveElement& alpha, const Staircase& Z,
                                std::int64_t klo, const std::vector<RawSlot>& slots,
                                BelowMode below) {
        std::vector<RankOneFunction> gs;
        gs.reserve(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            std::int64_t k = klo + static_cast<std::int64_t>(i);
            const auto& s = slots[i];
            if (s.mu.alpha != BreveElement::column(k + 1) || s.mu.beta != alpha)
                throw MismatchError("slot measure endpoints do not match slot " +
                                    std::to_string(k));
            if (s.mu.is_zero())
                throw ValidationError("zero measure on the support at slot " +
                                      std::to_string(k));
            if (s.f.fiber() != k)
                throw MismatchError("slot function fiber mismatch at slot " +
                                    std::to_string(k));
            gs.push_back(s.f.scaled(s.mu.c));
        }
        return from_normalized(alpha, Z, klo, std::move(gs), below);
    }

    /// Validating constructor from normalized slot products.  A vacuous
    /// window denotes the characteristic element of Z itself (or zero in the
    /// zero lower mode).
    static RankTwoFunction from_normalized(const BreveElement& alpha, const Staircase& Z,
                                           std::int64_t klo, std::vector<RankOneFunction> gs,
                                           BelowMode below) {
        if (gs.empty())
            return below == BelowMode::Zero ? zero(alpha)
                                            : delta_staircase(Z, alpha, Scalar(1));
        RankTwoFunction q;
        q.alpha_ = alpha;
        q.Z_ = Z;
        q.below_ = below;
        q.klo_ = klo;
        q.khi_ = klo + static_cast<std::int64_t>(gs.size()) - 1;
        q.slots_ = std::move(gs);
        for (std::size_t i = 0; i < q.slots_.size(); ++i)
            if (q.slots_[i].fiber() != klo + static_cast<std::int64_t>(i))
                q.slots_[i] = q.slots_[i].with_fiber(klo + static_cast<std::int64_t>(i));
        q.validate_and_close();
        return q;
    }

    /// The characteristic element of a staircase, scaled by coef.
    static RankTwoFunction delta_staircase(const Staircase& Z, const BreveElement& alpha,
                                           const Scalar& coef = Scalar(1)) {
        RankTwoFunction q;
        q.alpha_ = alpha;
        q.Z_ = Z;
        q.below_ = coef.is_zero() ? BelowMode::Zero : BelowMode::Staircase;
        q.klo_ = 0;
        q.khi_ = -1;
        q.cup_ = coef;
        q.cdown_ = coef;
        return q;
    }

    static RankTwoFunction zero(const BreveElement& alpha) {
        return delta_staircase(Staircase::standard(), alpha, Scalar(0));
    }

    const BreveElement& alpha() const { return alpha_; }
    const Staircase& staircase() const { return Z_; }
    BelowMode below_mode() const { return below_; }
    std::int64_t klo() const { return klo_; }
    std::int64_t khi() const { return khi_; }
    bool window_empty() const { return khi_ < klo_; }
    const Scalar& upper_coef() const { return cup_; }

    /// Coordinate of the staircase-normalized point of [(k+1,-inf), alpha].
    std::int64_t tz(std::int64_t k) const { return tz(Z_, alpha_, k); }
    static std::int64_t tz(const Staircase& Z, const BreveElement& alpha, std::int64_t k) {
        return d_staircase(Z, BreveElement::column(k + 1), alpha).t;
    }

    /// The normalized slot product at any k, tails included.
    RankOneFunction slot_product(std::int64_t k) const {
        if (!window_empty() && k >= klo_ && k <= khi_)
            return slots_[static_cast<std::size_t>(k - klo_)];
        if (k > khi_ || window_empty())
            return tail_product(cup_, k);
        // below the window
        if (below_ == BelowMode::Zero) return fn_zero(k);
        return tail_product(cdown_, k);
    }

    RankTwoFunction scaled(const Scalar& s) const {
        if (s.is_zero()) return zero(alpha_);
        RankTwoFunction q = *this;
        for (auto& g : q.slots_) g = g.scaled(s);
        q.cup_ = q.cup_ * s;
        q.cdown_ = q.cdown_ * s;
        return q;
    }

    bool is_zero() const {
        if (window_empty()) return cup_.is_zero();
        for (const auto& g : slots_)
            if (!g.is_zero()) return false;
        return true;
    }

    /// Semantic equality of the represented elements.
    friend bool operator==(const RankTwoFunction& a, const RankTwoFunction& b) {
        if (a.alpha_ != b.alpha_) return false;
        auto probe = probe_range(a, b);
        for (std::int64_t k = probe.first; k <= probe.second; ++k)
            if (a.slot_product(k) != b.slot_product(k)) return false;
        // asymptotic staircase tails
        auto up_a = a.slot_product(probe.second + 1), up_b = b.slot_product(probe.second + 1);
        if (up_a != up_b) return false;
        if (!up_a.is_zero() && (a.Z_.slope() != b.Z_.slope() ||
                                a.Z_.intercept() != b.Z_.intercept()))
            return false;
        auto dn_a = a.slot_product(probe.first - 1), dn_b = b.slot_product(probe.first - 1);
        if (dn_a != dn_b) return false;
        if (!dn_a.is_zero() && (a.Z_.slope() != b.Z_.slope() ||
                                a.Z_.intercept() != b.Z_.intercept()))
            return false;
        return true;
    }
    friend bool operator!=(const RankTwoFunction& a, const RankTwoFunction& b) {
        return !(a == b);
    }

    /// Explicit slot products over [lo, hi], for rebuilding and transforms.
    std::vector<RankOneFunction> materialized(std::int64_t lo, std::int64_t hi) const {
        std::vector<RankOneFunction> out;
        for (std::int64_t k = lo; k <= hi; ++k) out.push_back(slot_product(k));
        return out;
    }

    /// Work window guaranteed non-empty.
    std::pair<std::int64_t, std::int64_t> work_window() const {
        if (window_empty()) return {0, 0};
        return {klo_, khi_};
    }

private:
    RankTwoFunction() = default;

    RankOneFunction tail_product(const Scalar& c, std::int64_t k) const {
        return delta_geq(k, Z_.floor_at(k)).scaled(c * r_pow(tz(k)));
    }

    void validate_and_close() {
        for (std::int64_t k = klo_; k < khi_; ++k) {
            const auto& gk = slots_[static_cast<std::size_t>(k - klo_)];
            const auto& gk1 = slots_[static_cast<std::size_t>(k + 1 - klo_)];
            if (delta_infty_of(gk) != detail::canonical_eta_pair(gk1))
                throw ValidationError("matching condition fails at slot " + std::to_string(k));
        }
        const auto& gtop = slots_.back();
        cup_ = delta_infty_of(gtop) * r_pow(Z_.floor_at(khi_ + 1) - tz(khi_ + 1));
        const auto& gbot = slots_.front();
        Scalar bottom = detail::canonical_eta_pair(gbot);
        if (below_ == BelowMode::Zero) {
            if (!bottom.is_zero())
                throw ValidationError("matching condition fails at slot " +
                                      std::to_string(klo_ - 1) + " (zero lower tail)");
            cdown_ = Scalar(0);
        } else {
            cdown_ = bottom * r_pow(-tz(klo_ - 1));
        }
    }

    static std::pair<std::int64_t, std::int64_t> probe_range(const RankTwoFunction& a,
                                                             const RankTwoFunction& b) {
        std::int64_t lo = std::min(a.work_window().first, b.work_window().first);
        std::int64_t hi = std::max(a.work_window().second, b.work_window().second);
        for (const auto* q : {&a, &b})
            for (auto [n, z] : q->Z_.exceptions()) {
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
        return {lo - 1, hi + 1};
    }

    BreveElement alpha_;
    Staircase Z_;
    BelowMode below_ = BelowMode::Staircase;
    std::int64_t klo_ = 0, khi_ = -1;
    std::vector<RankOneFunction> slots_;
    Scalar cup_, cdown_;
};

/// Element of the rank-2 distribution space in normal form: finitely many
/// slots, measures folded against the canonical bases, and no slot carrying a
/// constant-sequence component (those are traded one slot up by the defining
/// relations).
class RankTwoDistribution {
public:
    struct RawTerm {
        std::int64_t k;
        RankOneDistribution g;
        MeasureElement lambda; // element of the line (alpha, k+1)
    };

    static RankTwoDistribution zero(const BreveElement& alpha) {
        RankTwoDistribution s;
        s.alpha_ = alpha;
        return s;
    }

    /// Accumulates raw terms and reduces to normal form.
    static RankTwoDistribution reduce(const BreveElement& alpha,
                                      const std::vector<RawTerm>& terms) {
        RankTwoDistribution s;
        s.alpha_ = alpha;
        for (const auto& t : terms) {
            if (t.lambda.alpha != alpha || t.lambda.beta != BreveElement::column(t.k + 1))
                throw MismatchError("term measure endpoints do not match slot " +
                                    std::to_string(t.k));
            if (t.g.fiber() != t.k)
                throw MismatchError("term fiber mismatch at slot " + std::to_string(t.k));
            s.add_slot(t.k, t.g.scaled(t.lambda.c));
        }
        s.normalize();
        return s;
    }

    /// Raw terms with measures already folded in.
    static RankTwoDistribution reduce_normalized(
        const BreveElement& alpha,
        const std::vector<std::pair<std::int64_t, RankOneDistribution>>& terms) {
        RankTwoDistribution s;
        s.alpha_ = alpha;
        for (const auto& [k, g] : terms) s.add_slot(k, g.with_fiber(k));
        s.normalize();
        return s;
    }

    const BreveElement& alpha() const { return alpha_; }
    const std::map<std::int64_t, RankOneDistribution>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RankOneDistribution slot(std::int64_t k) const {
        auto it = terms_.find(k);
        return it != terms_.end() ? it->second : dist_zero(k);
    }

    RankTwoDistribution scaled(const Scalar& c) const {
        RankTwoDistribution s;
        s.alpha_ = alpha_;
        if (c.is_zero()) return s;
        for (auto& [k, g] : terms_) s.terms_.emplace(k, g.scaled(c));
        return s;
    }

    friend RankTwoDistribution operator+(const RankTwoDistribution& a,
                                         const RankTwoDistribution& b) {
        if (a.alpha_ != b.alpha_) throw MismatchError("base point mismatch in addition");
        RankTwoDistribution s;
        s.alpha_ = a.alpha_;
        s.terms_ = a.terms_;
        for (auto& [k, g] : b.terms_) s.add_slot(k, g);
        s.normalize();
        return s;
    }

    friend bool operator==(const RankTwoDistribution& a, const RankTwoDistribution& b) {
        return a.alpha_ == b.alpha_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const RankTwoDistribution& a, const RankTwoDistribution& b) {
        return !(a == b);
    }

private:
    void add_slot(std::int64_t k, const RankOneDistribution& g) {
        auto it = terms_.find(k);
        if (it == terms_.end())
            terms_.emplace(k, g);
        else
            it->second = it->second + g;
    }

    /// Trade every constant-sequence component one slot upward, lowest slot
    /// first; the traded summand carries none, so one sweep terminates.
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            Scalar c = it->second.hi_const();
            if (!c.is_zero()) {
                it->second = it->second - dist_delta_plus_infinity(it->first).scaled(c);
                add_slot(it->first + 1, dist_eta(it->first + 1, c));
            }
        }
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    BreveElement alpha_;
    std::map<std::int64_t, RankOneDistribution> terms_;
};

/// The non-degenerate pairing: a finite sum of per-slot pairings.
inline Scalar pair_rank2(const RankTwoFunction& q, const RankTwoDistribution& s) {
    if (q.alpha() != s.alpha()) throw MismatchError("base point mismatch in pairing");
    Scalar acc(0);
    for (const auto& [k, g] : s.terms()) acc += pair_rank1(q.slot_product(k), g);
    return acc;
}

/// The characteristic distribution of the submodule indexed by gamma,
/// weighted by b from the line (alpha, gamma).
inline RankTwoDistribution delta_gamma(const BreveElement& gamma, const MeasureElement& b,
                                       const BreveElement& alpha) {
    if (b.alpha != alpha || b.beta != gamma)
        throw MismatchError("weight line endpoints must be (alpha, gamma)");
    if (b.is_zero()) return RankTwoDistribution::zero(alpha);
    if (!gamma.finite)
        return RankTwoDistribution::reduce_normalized(alpha,
                                                      {{gamma.n, dist_eta(gamma.n, b.c)}});
    std::int64_t p0 = gamma.p;
    Scalar lo_c = b.c * r_pow(-std::min<std::int64_t>(0, p0));
    Scalar hi_g = b.c * r_pow(std::max<std::int64_t>(0, p0));
    RankOneDistribution g(gamma.n, Scalar::r(), p0, p0, lo_c, Scalar(0), {}, Scalar(0), hi_g);
    return RankTwoDistribution::reduce_normalized(alpha, {{gamma.n, g}});
}

/// Change of the reference index: tensoring with a nonzero element of a
/// measure line.  Functions consume (alpha_old, alpha_new); distributions
/// consume (alpha_new, alpha_old).
inline RankTwoFunction retarget_alpha(const RankTwoFunction& q, const MeasureElement& h) {
    if (h.is_zero()) throw DivisionByZero("retarget by the zero measure");
    if (h.alpha != q.alpha()) throw MismatchError("retarget endpoint mismatch");
    auto [lo, hi] = q.work_window();
    std::vector<RankOneFunction> gs;
    for (std::int64_t k = lo; k <= hi; ++k) gs.push_back(q.slot_product(k).scaled(h.c));
    return RankTwoFunction::from_normalized(h.beta, q.staircase(), lo, std::move(gs),
                                            q.below_mode());
}

inline RankTwoDistribution retarget_alpha(const RankTwoDistribution& s,
                                          const MeasureElement& h) {
    if (h.is_zero()) throw DivisionByZero("retarget by the zero measure");
    if (h.beta != s.alpha()) throw MismatchError("retarget endpoint mismatch");
    std::vector<std::pair<std::int64_t, RankOneDistribution>> terms;
    for (auto& [k, g] : s.terms()) terms.emplace_back(k, g.scaled(h.c));
    return RankTwoDistribution::reduce_normalized(h.alpha, terms);
}

/// Per-slot trivialization against the characteristic element of Z.
inline RankOneFunction psi_trivialize_slot(const RankTwoFunction& q, const Staircase& Z,
                                           std::int64_t k) {
    return q.slot_product(k).scaled(r_pow(-RankTwoFunction::tz(Z, q.alpha(), k)));
}

/// Inverse of the trivialization over an explicit window.
inline RankTwoFunction psi_reconstruct(const BreveElement& alpha, const Staircase& Zpsi,
                                       const Staircase& Ztails, std::int64_t klo,
                                       const std::vector<RankOneFunction>& gs,
                                       BelowMode below) {
    std::vector<RankOneFunction> slots;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::int64_t k = klo + static_cast<std::int64_t>(i);
        slots.push_back(gs[i].with_fiber(k).scaled(
            r_pow(RankTwoFunction::tz(Zpsi, alpha, k))));
    }
    return RankTwoFunction::from_normalized(alpha, Ztails, klo, std::move(slots), below);
}

} // namespace rk2
