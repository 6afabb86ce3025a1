#pragma once

#include <utility>
#include <vector>

#include "rk2/rank2.hpp"

namespace rk2 {

/// Fiber transform on functions: the indicator based at x maps to the
/// indicator based at the reflected point, weighted by the measure value
/// eta(x) = coef * rho^{-x}.  Input lives on fiber k, output on -k - pi(gamma).
template <class F>
FnZ<F> fourier_fiber_fn_core(const FnZ<F>& f, GammaElement gamma, const F& coef,
                             const F& rho) {
    std::int64_t out_fiber = -f.fiber() - gamma.n;
    std::vector<std::pair<std::int64_t, F>> js;
    F acc = rho / rho; // reusable unit
    for (auto& [x, c] : f.jumps()) {
        F w = coef * c;
        std::int64_t e = -x;
        const F base = e >= 0 ? rho : (acc / rho);
        for (std::int64_t i = 0, n = e >= 0 ? e : -e; i < n; ++i) w = w * base;
        js.emplace_back(-x - gamma.p + 1, w);
    }
    return FnZ<F>::from_jumps(out_fiber, js, rho);
}

/// Fiber transform on distributions: the diagonal values pick up the measure
/// weight and the reflected index.  Input on fiber -k - pi(gamma), output on k.
template <class F>
DistZ<F> fourier_fiber_dist_core(const DistZ<F>& a, GammaElement gamma, const F& coef,
                                 std::int64_t out_fiber) {
    return a.reflect_mul_geo(1 - gamma.p, coef).with_fiber(out_fiber);
}

/// Measure-element wrappers (checked): eta is an element of a fiber line.
inline RankOneFunction fourier_fiber_fn(const RankOneFunction& f, GammaElement gamma,
                                        const MeasureElement& eta) {
    if (eta.is_zero()) throw DivisionByZero("fiber transform with zero measure");
    if (eta.alpha != BreveElement::column(f.fiber() + 1) ||
        eta.beta != BreveElement::column(f.fiber()))
        throw MismatchError("eta is not on the fiber line of f");
    return fourier_fiber_fn_core(f, gamma, eta.c, Scalar::r());
}

inline RankOneDistribution fourier_fiber_dist(const RankOneDistribution& a,
                                              GammaElement gamma,
                                              const MeasureElement& eta) {
    if (eta.is_zero()) throw DivisionByZero("fiber transform with zero measure");
    std::int64_t k = eta.alpha.n - 1;
    if (eta.alpha != BreveElement::column(k + 1) || eta.beta != BreveElement::column(k))
        throw MismatchError("eta is not on a fiber line");
    if (a.fiber() != -k - gamma.n)
        throw MismatchError("distribution fiber does not match the dual of eta's");
    return fourier_fiber_dist_core(a, gamma, eta.c, k);
}

/// The inverse-side measure element: the reflected image of eta, inverted.
/// Feeding it back through the fiber transform realizes the identity.
inline MeasureElement eta_inverse_perp(const MeasureElement& eta, GammaElement gamma) {
    return mu_inverse(mu_perp(eta, gamma));
}

/// Whole-space transform on functions.  Slot k maps to slot -k - pi(gamma);
/// the measure re-indexing runs through the reflection transport of each
/// slot's measure line, so every sign convention is exercised by the
/// involution property.
inline RankTwoFunction fourier_rank2_fn(const RankTwoFunction& q, GammaElement gamma) {
    const BreveElement alpha = q.alpha();
    BreveElement alpha_out = perp(alpha, gamma);
    auto [klo, khi] = q.work_window();

    // reflected staircase
    std::map<std::int64_t, std::int64_t> ex;
    for (auto [n, z] : q.staircase().exceptions())
        ex.emplace(-n - gamma.n, -z - gamma.p + 1);
    Staircase zout(q.staircase().slope(),
                   q.staircase().slope() * gamma.n - q.staircase().intercept() - gamma.p + 1,
                   std::move(ex));

    std::int64_t out_lo = -khi - gamma.n, out_hi = -klo - gamma.n;
    std::vector<RankOneFunction> gs;
    for (std::int64_t K = out_lo; K <= out_hi; ++K) {
        std::int64_t k = -K - gamma.n;
        Scalar w = r_pow(perp_offset(BreveElement::column(k), alpha, gamma));
        gs.push_back(
            fourier_fiber_fn_core(q.slot_product(k), gamma, Scalar(1), Scalar::r()).scaled(w));
    }
    return RankTwoFunction::from_normalized(alpha_out, zout, out_lo, std::move(gs),
                                            BelowMode::Staircase);
}

/// Whole-space transform on distributions, followed by normal-form reduction.
inline RankTwoDistribution fourier_rank2_dist(const RankTwoDistribution& s,
                                              GammaElement gamma) {
    const BreveElement alpha = s.alpha();
    BreveElement alpha_out = perp(alpha, gamma);
    std::vector<std::pair<std::int64_t, RankOneDistribution>> terms;
    for (const auto& [j, h] : s.terms()) {
        std::int64_t K = -j - gamma.n;
        Scalar w = r_pow(perp_offset(alpha, BreveElement::column(j + 1), gamma));
        terms.emplace_back(K, fourier_fiber_dist_core(h, gamma, w, K));
    }
    return RankTwoDistribution::reduce_normalized(alpha_out, terms);
}

} // namespace rk2
