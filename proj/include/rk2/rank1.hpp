#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "rk2/errors.hpp"
#include "rk2/scalar.hpp"

namespace rk2 {

/// Function on a Z-fiber vanishing far below and eventually constant above:
/// zero for p < base, explicit values on [base, base+L), the constant tail
/// beyond.  Canonical: values.front() != 0 and values.back() != tail.
template <class F>
class FnZ {
public:
    FnZ(std::int64_t fiber, std::int64_t base, std::vector<F> values, F tail)
        : fiber_(fiber), base_(base), values_(std::move(values)), tail_(std::move(tail)) {
        canonicalize();
    }

    static FnZ zero(std::int64_t fiber, const F& like) {
        return FnZ(fiber, 0, {}, like - like);
    }
    static FnZ delta_geq(std::int64_t fiber, std::int64_t p, const F& one) {
        return FnZ(fiber, p, {}, one);
    }

    std::int64_t fiber() const { return fiber_; }
    std::int64_t base() const { return base_; }
    std::int64_t len() const { return static_cast<std::int64_t>(values_.size()); }
    const F& tail() const { return tail_; }
    bool is_zero() const { return values_.empty() && tail_ == zero_value(); }

    F at(std::int64_t p) const {
        if (p < base_) return zero_value();
        if (p < base_ + len()) return values_[static_cast<std::size_t>(p - base_)];
        return tail_;
    }

    /// Finite expansion over the indicator basis: the jumps at(p) - at(p-1).
    std::vector<std::pair<std::int64_t, F>> jumps() const {
        std::vector<std::pair<std::int64_t, F>> out;
        for (std::int64_t p = base_; p <= base_ + len(); ++p) {
            F c = at(p) - at(p - 1);
            if (!(c == zero_value())) out.emplace_back(p, c);
        }
        return out;
    }

    static FnZ from_jumps(std::int64_t fiber, const std::vector<std::pair<std::int64_t, F>>& js,
                          const F& like) {
        F zero = like - like;
        if (js.empty()) return FnZ::zero(fiber, like);
        std::int64_t lo = js.front().first, hi = js.front().first;
        for (auto& [p, c] : js) {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        std::vector<F> vals;
        F total = zero;
        for (std::int64_t x = lo; x < hi; ++x) {
            F acc = zero;
            for (auto& [p, c] : js)
                if (p <= x) acc = acc + c;
            vals.push_back(acc);
        }
        for (auto& [p, c] : js) total = total + c;
        return FnZ(fiber, lo, std::move(vals), total);
    }

    FnZ translated(std::int64_t s) const {
        FnZ out = *this;
        if (!out.is_zero()) out.base_ += s;
        return out;
    }
    FnZ with_fiber(std::int64_t k) const {
        FnZ out = *this;
        out.fiber_ = k;
        return out;
    }

    FnZ scaled(const F& s) const {
        FnZ out = *this;
        for (auto& v : out.values_) v = v * s;
        out.tail_ = out.tail_ * s;
        out.canonicalize();
        return out;
    }

    friend FnZ operator+(const FnZ& a, const FnZ& b) {
        if (a.fiber_ != b.fiber_) throw MismatchError("fiber mismatch in addition");
        std::int64_t lo = std::min(a.base_, b.base_);
        std::int64_t hi = std::max(a.base_ + a.len(), b.base_ + b.len());
        std::vector<F> vals;
        vals.reserve(static_cast<std::size_t>(hi - lo));
        for (std::int64_t p = lo; p < hi; ++p) vals.push_back(a.at(p) + b.at(p));
        return FnZ(a.fiber_, lo, std::move(vals), a.tail_ + b.tail_);
    }
    friend FnZ operator-(const FnZ& a, const FnZ& b) { return a + b.scaled_minus_one(); }

    friend bool operator==(const FnZ& a, const FnZ& b) {
        return a.fiber_ == b.fiber_ && a.tail_ == b.tail_ && a.values_ == b.values_ &&
               (a.is_zero() || a.base_ == b.base_);
    }
    friend bool operator!=(const FnZ& a, const FnZ& b) { return !(a == b); }

private:
    FnZ scaled_minus_one() const {
        FnZ out = *this;
        for (auto& v : out.values_) v = zero_value() - v;
        out.tail_ = zero_value() - out.tail_;
        return out;
    }
    F zero_value() const { return tail_ - tail_; }

    void canonicalize() {
        F zero = zero_value();
        std::size_t skip = 0;
        while (skip < values_.size() && values_[skip] == zero) ++skip;
        if (skip) {
            base_ += static_cast<std::int64_t>(skip);
            values_.erase(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(skip));
        }
        while (!values_.empty() && values_.back() == tail_) values_.pop_back();
        if (values_.empty() && tail_ == zero) base_ = 0;
    }

    std::int64_t fiber_;
    std::int64_t base_;
    std::vector<F> values_;
    F tail_;
};

/// Distribution on a Z-fiber in diagonal coordinates a_x, restricted to the
/// representable class whose two tails lie in the span of the constant
/// sequence and the geometric sequence rho^{-x}:
///   a_x = lo_c + lo_g * rho^{-x}  for x <= xlo,
///   a_x = hi_c + hi_g * rho^{-x}  for x >= xhi,
/// with explicit values in between.  The class is closed under addition,
/// translation, the difference map and the reflected geometric twist used by
/// the Fourier transform.
template <class F>
class DistZ {
public:
    DistZ(std::int64_t fiber, F rho, std::int64_t xlo, std::int64_t xhi, F lo_c, F lo_g,
          std::vector<F> mid, F hi_c, F hi_g)
        : fiber_(fiber), rho_(std::move(rho)), xlo_(xlo), xhi_(xhi), lo_c_(std::move(lo_c)),
          lo_g_(std::move(lo_g)), hi_c_(std::move(hi_c)), hi_g_(std::move(hi_g)),
          mid_(std::move(mid)) {
        if (xhi_ < xlo_) throw ValidationError("distribution window out of order");
        if (mid_.size() != window_size())
            throw ValidationError("distribution window size mismatch");
        rho_inv_ = unit() / rho_;
        if (rho_ == zero_value() || rho_ == unit())
            throw ValidationError("geometric ratio must differ from 0 and 1");
        canonicalize();
    }

    /// All diagonal values equal to one: the image of the point mass.
    static DistZ delta_plus_infinity(std::int64_t fiber, const F& rho) {
        F one = rho / rho, zero = rho - rho;
        return DistZ(fiber, rho, 0, 0, one, zero, {}, one, zero);
    }

    /// c * rho^{-x}: the shape of fiber measures and of the deformed mass.
    static DistZ geometric(std::int64_t fiber, const F& rho, const F& c) {
        F zero = rho - rho;
        return DistZ(fiber, rho, 0, 0, zero, c, {}, zero, c);
    }

    static DistZ zero(std::int64_t fiber, const F& rho) {
        F z = rho - rho;
        return DistZ(fiber, rho, 0, 0, z, z, {}, z, z);
    }

    /// Single diagonal spike at x (finitely supported distribution).
    static DistZ spike(std::int64_t fiber, const F& rho, std::int64_t x, const F& c) {
        F z = rho - rho;
        return DistZ(fiber, rho, x - 1, x + 1, z, z, {c}, z, z);
    }

    std::int64_t fiber() const { return fiber_; }
    const F& rho() const { return rho_; }
    std::int64_t xlo() const { return xlo_; }
    std::int64_t xhi() const { return xhi_; }
    const F& lo_const() const { return lo_c_; }
    const F& lo_geom() const { return lo_g_; }
    const F& hi_const() const { return hi_c_; }
    const F& hi_geom() const { return hi_g_; }
    const std::vector<F>& mid() const { return mid_; }

    F at(std::int64_t x) const {
        if (x <= xlo_) return lo_c_ + lo_g_ * rho_pow(-x);
        if (x >= xhi_) return hi_c_ + hi_g_ * rho_pow(-x);
        return mid_[static_cast<std::size_t>(x - xlo_ - 1)];
    }

    bool is_zero() const {
        F z = zero_value();
        if (!(lo_c_ == z && lo_g_ == z && hi_c_ == z && hi_g_ == z)) return false;
        for (const auto& v : mid_)
            if (!(v == z)) return false;
        return true;
    }

    DistZ with_fiber(std::int64_t k) const {
        DistZ out = *this;
        out.fiber_ = k;
        return out;
    }

    /// b_x = a_{x-s}.
    DistZ translated(std::int64_t s) const {
        F sc = rho_pow(s);
        return DistZ(fiber_, rho_, xlo_ + s, xhi_ + s, lo_c_, lo_g_ * sc, mid_, hi_c_,
                     hi_g_ * sc);
    }

    DistZ scaled(const F& s) const {
        std::vector<F> m = mid_;
        for (auto& v : m) v = v * s;
        return DistZ(fiber_, rho_, xlo_, xhi_, lo_c_ * s, lo_g_ * s, std::move(m), hi_c_ * s,
                     hi_g_ * s);
    }

    friend DistZ operator+(const DistZ& a, const DistZ& b) {
        if (a.fiber_ != b.fiber_) throw MismatchError("fiber mismatch in addition");
        if (!(a.rho_ == b.rho_)) throw MismatchError("geometric ratio mismatch in addition");
        std::int64_t lo = std::min(a.xlo_, b.xlo_), hi = std::max(a.xhi_, b.xhi_);
        std::vector<F> m;
        for (std::int64_t x = lo + 1; x < hi; ++x) m.push_back(a.at(x) + b.at(x));
        return DistZ(a.fiber_, a.rho_, lo, hi, a.lo_c_ + b.lo_c_, a.lo_g_ + b.lo_g_,
                     std::move(m), a.hi_c_ + b.hi_c_, a.hi_g_ + b.hi_g_);
    }
    friend DistZ operator-(const DistZ& a, const DistZ& b) {
        F mone = (a.rho_ - a.rho_) - (a.rho_ / a.rho_);
        return a + b.scaled(mone);
    }

    friend bool operator==(const DistZ& a, const DistZ& b) {
        return a.fiber_ == b.fiber_ && a.rho_ == b.rho_ && a.xlo_ == b.xlo_ &&
               a.xhi_ == b.xhi_ && a.lo_c_ == b.lo_c_ && a.lo_g_ == b.lo_g_ &&
               a.hi_c_ == b.hi_c_ && a.hi_g_ == b.hi_g_ && a.mid_ == b.mid_;
    }
    friend bool operator!=(const DistZ& a, const DistZ& b) { return !(a == b); }

    /// x -> a_x - a_{x+1}; kills exactly the constant distributions.
    DistZ difference_map() const {
        F unit_minus = unit() - rho_inv_;
        std::vector<F> m;
        for (std::int64_t x = xlo_; x < xhi_; ++x) m.push_back(at(x) - at(x + 1));
        return DistZ(fiber_, rho_, xlo_ - 1, xhi_, zero_value(), lo_g_ * unit_minus,
                     std::move(m), zero_value(), hi_g_ * unit_minus);
    }

    /// b_y = coef * rho^{-y} * a_{s-y}: the index reflection combined with the
    /// geometric twist of the fiber Fourier transform.  The tail span is
    /// stable under exactly this combination.
    DistZ reflect_mul_geo(std::int64_t s, const F& coef) const {
        F rs = rho_pow(-s);
        // y large uses the low tail of a; y small uses the high tail.
        F nhi_c = coef * lo_g_ * rs, nhi_g = coef * lo_c_;
        F nlo_c = coef * hi_g_ * rs, nlo_g = coef * hi_c_;
        std::int64_t nlo = s - xhi_, nhi = s - xlo_;
        std::vector<F> m;
        for (std::int64_t y = nlo + 1; y < nhi; ++y)
            m.push_back(coef * rho_pow(-y) * at(s - y));
        return DistZ(fiber_, rho_, nlo, nhi, nlo_c, nlo_g, std::move(m), nhi_c, nhi_g);
    }

    F rho_pow(std::int64_t e) const {
        F acc = unit();
        const F& b = e >= 0 ? rho_ : rho_inv_;
        for (std::int64_t i = 0, n = e >= 0 ? e : -e; i < n; ++i) acc = acc * b;
        return acc;
    }

private:
    F zero_value() const { return rho_ - rho_; }
    F unit() const { return rho_ / rho_; }

    std::size_t window_size() const {
        return static_cast<std::size_t>(std::max<std::int64_t>(0, xhi_ - xlo_ - 1));
    }

    void canonicalize() {
        // shrink the window from above, then from below
        while (xhi_ > xlo_) {
            std::int64_t x = xhi_ - 1;
            F v = x <= xlo_ ? lo_c_ + lo_g_ * rho_pow(-x)
                            : mid_[static_cast<std::size_t>(x - xlo_ - 1)];
            if (!(v == hi_c_ + hi_g_ * rho_pow(-x))) break;
            --xhi_;
            if (!mid_.empty()) mid_.pop_back();
        }
        while (xlo_ < xhi_) {
            std::int64_t x = xlo_ + 1;
            F v = x >= xhi_ ? hi_c_ + hi_g_ * rho_pow(-x)
                            : mid_[static_cast<std::size_t>(x - xlo_ - 1)];
            if (!(v == lo_c_ + lo_g_ * rho_pow(-x))) break;
            ++xlo_;
            if (!mid_.empty()) mid_.erase(mid_.begin());
        }
        if (xlo_ == xhi_) {
            if (!(lo_c_ + lo_g_ * rho_pow(-xlo_) == hi_c_ + hi_g_ * rho_pow(-xlo_)))
                throw ValidationError("inconsistent distribution tails at the window point");
            if (lo_c_ == hi_c_ && lo_g_ == hi_g_) {
                xlo_ = xhi_ = 0; // globally defined: anchor at zero
            }
        }
    }

    std::int64_t fiber_;
    F rho_, rho_inv_;
    std::int64_t xlo_, xhi_;
    F lo_c_, lo_g_, hi_c_, hi_g_;
    std::vector<F> mid_;
};

/// The finite pairing sum of a function against a distribution.
template <class F>
F pair_rank1(const FnZ<F>& f, const DistZ<F>& a) {
    if (f.fiber() != a.fiber()) throw MismatchError("fiber mismatch in pairing");
    F acc = a.rho() - a.rho();
    for (auto& [p, c] : f.jumps()) acc = acc + c * a.at(p);
    return acc;
}

/// The constant-tail functional: the coefficient against which the point-mass
/// distribution pairs.
template <class F>
F delta_infty_of(const FnZ<F>& f) {
    return f.tail();
}

/// Pairing of f against the canonical fiber measure scaled by coef,
/// i.e. against the distribution x -> coef * rho^{-x}.
template <class F>
F eta_pair(const FnZ<F>& f, const F& coef, const F& rho) {
    return coef * pair_rank1(f, DistZ<F>::geometric(f.fiber(), rho, rho / rho));
}

// Scalar-field conveniences ---------------------------------------------------

using RankOneFunction = FnZ<Scalar>;
using RankOneDistribution = DistZ<Scalar>;

inline RankOneFunction fn_zero(std::int64_t k) { return RankOneFunction::zero(k, Scalar(1)); }
inline RankOneFunction delta_geq(std::int64_t k, std::int64_t p) {
    return RankOneFunction::delta_geq(k, p, Scalar(1));
}
inline RankOneDistribution dist_delta_plus_infinity(std::int64_t k) {
    return RankOneDistribution::delta_plus_infinity(k, Scalar::r());
}
/// The deformed mass: diagonal values r^{-x}.
inline RankOneDistribution dist_g_r(std::int64_t k) {
    return RankOneDistribution::geometric(k, Scalar::r(), Scalar(1));
}
/// Fiber measure with coefficient c as a distribution on the fiber.
inline RankOneDistribution dist_eta(std::int64_t k, const Scalar& c) {
    return RankOneDistribution::geometric(k, Scalar::r(), c);
}
inline RankOneDistribution dist_zero(std::int64_t k) {
    return RankOneDistribution::zero(k, Scalar::r());
}

} // namespace rk2
