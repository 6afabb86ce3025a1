#pragma once

#include <cstdint>
#include <vector>

#include "rk2/heisenberg.hpp"
#include "rk2/rank2.hpp"

namespace rk2 {

/// Deterministic seeded generator (splitmix64) with bounded element builders;
/// drives every randomized suite reproducibly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % std::uint64_t(hi - lo + 1));
    }

    bool flip() { return next() & 1; }

    /// Small nonzero scalar from a fixed pool of units and near-units.
    Scalar unit_scalar() {
        switch (range(0, 5)) {
        case 0: return Scalar(1);
        case 1: return Scalar(-1);
        case 2: return Scalar(2);
        case 3: return Scalar(Rational(1, 2));
        case 4: return r_pow(range(-2, 2));
        default: return Scalar(1) + Scalar::r();
        }
    }

    /// Small scalar, possibly zero.
    Scalar small_scalar() {
        if (range(0, 4) == 0) return Scalar(0);
        Scalar v = Scalar(range(-3, 3));
        if (flip()) v = v * r_pow(range(-2, 2));
        if (flip()) v = v + Scalar(range(-2, 2));
        return v;
    }

    GammaElement gamma(std::int64_t bound) {
        return {range(-bound, bound), range(-bound, bound)};
    }

    BreveElement breve(std::int64_t nb, std::int64_t pb) {
        if (range(0, 2) == 0) return BreveElement::column(range(-nb, nb));
        return BreveElement::at(range(-nb, nb), range(-pb, pb));
    }

    Staircase staircase() {
        std::map<std::int64_t, std::int64_t> ex;
        for (int i = 0, n = int(range(0, 2)); i < n; ++i)
            ex[range(-4, 4)] = range(-5, 5);
        return Staircase(range(-2, 2), range(-3, 3), std::move(ex));
    }

    /// Fiber function with a prescribed tail constant.
    RankOneFunction fn_with_tail(std::int64_t k, const Scalar& tail) {
        std::vector<std::pair<std::int64_t, Scalar>> js;
        Scalar sum(0);
        int n = int(range(0, 3));
        for (int i = 0; i < n; ++i) {
            Scalar c = small_scalar();
            js.emplace_back(range(-5, 5), c);
            sum += c;
        }
        js.emplace_back(range(-5, 5), tail - sum); // force the tail value
        return RankOneFunction::from_jumps(k, js, Scalar(1));
    }

    RankOneFunction fn(std::int64_t k) { return fn_with_tail(k, small_scalar()); }

    /// Random representable distribution (raw; may carry constant components).
    RankOneDistribution dist_raw(std::int64_t k) {
        Scalar r = Scalar::r();
        std::int64_t lo = range(-4, 0), hi = lo + range(0, 4);
        std::vector<Scalar> mid;
        for (std::int64_t x = lo + 1; x < hi; ++x) mid.push_back(small_scalar());
        Scalar lc = small_scalar(), lg = small_scalar();
        Scalar hc = small_scalar(), hg = small_scalar();
        if (hi == lo) {
            // overlapping window point must agree
            hc = lc;
            hg = lg;
        }
        return RankOneDistribution(k, r, lo, hi, lc, lg, std::move(mid), hc, hg);
    }

    /// Random normal-form distribution slot (no constant upper component).
    RankOneDistribution dist_normal(std::int64_t k) {
        Scalar r = Scalar::r();
        std::int64_t lo = range(-4, 0), hi = lo + range(1, 4);
        std::vector<Scalar> mid;
        for (std::int64_t x = lo + 1; x < hi; ++x) mid.push_back(small_scalar());
        return RankOneDistribution(k, r, lo, hi, small_scalar(), small_scalar(),
                                   std::move(mid), Scalar(0), small_scalar());
    }

    /// Random valid rank-2 function with window width <= width.
    RankTwoFunction rank2_fn(const BreveElement& alpha, int width = 4) {
        Staircase Z = staircase();
        std::int64_t klo = range(-3, 1);
        std::int64_t khi = klo + range(0, width - 1);
        BelowMode below = flip() ? BelowMode::Zero : BelowMode::Staircase;
        std::vector<RankOneFunction> gs(std::size_t(khi - klo + 1), fn_zero(0));
        // build downward: the tail of g_k is pinned by the slot above
        gs.back() = fn(khi);
        for (std::int64_t k = khi - 1; k >= klo; --k) {
            Scalar need = detail::canonical_eta_pair(gs[std::size_t(k + 1 - klo)]);
            gs[std::size_t(k - klo)] = fn_with_tail(k, need);
        }
        if (below == BelowMode::Zero) {
            // adjust the bottom slot to kill its measure pairing without
            // touching its tail
            auto& g = gs.front();
            Scalar s = detail::canonical_eta_pair(g);
            std::int64_t x0 = range(-6, 0), x1 = x0 + range(1, 3);
            Scalar denom = r_pow(-x0) - r_pow(-x1);
            Scalar lam = Scalar(0) - s / denom;
            g = g + (delta_geq(g.fiber(), x0) - delta_geq(g.fiber(), x1)).scaled(lam);
        }
        return RankTwoFunction::from_normalized(alpha, Z, klo, std::move(gs), below);
    }

    /// Random normal-form rank-2 distribution with bounded support.
    RankTwoDistribution rank2_dist(const BreveElement& alpha, int slots = 3) {
        std::vector<std::pair<std::int64_t, RankOneDistribution>> terms;
        int n = int(range(1, slots));
        for (int i = 0; i < n; ++i) {
            std::int64_t k = range(-3, 3);
            terms.emplace_back(k, dist_normal(k));
        }
        return RankTwoDistribution::reduce_normalized(alpha, terms);
    }

    HeisQuad quad(std::int64_t bound) {
        return {range(-bound, bound), range(-bound, bound), range(-bound, bound),
                range(-bound, bound)};
    }

    HeisTilde tilde(const BreveElement& alpha, std::int64_t bound) {
        return tilde_make(alpha, gamma(bound), range(-bound, bound));
    }

    HeisExt ext(const BreveElement& alpha, std::int64_t bound) {
        return {tilde(alpha, bound), range(-bound, bound)};
    }

private:
    std::uint64_t s_;
};

} // namespace rk2
