#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rk2/cyclotomic.hpp"
#include "rk2/rank1.hpp"

namespace rk2 {

/// Finite-support Laurent vector over F_p within the exponent window
/// [-M, M): an exact representative of an element of the Laurent series
/// field modulo the M-th power of the maximal ideal.
class LaurentF {
public:
    LaurentF(int p, int M) : p_(p), M_(M), c_(std::size_t(2 * M), 0) {}

    static LaurentF monomial(int p, int M, int exp, int coef = 1) {
        LaurentF x(p, M);
        x.set(exp, coef);
        return x;
    }

    int p() const { return p_; }
    int M() const { return M_; }

    int get(int exp) const {
        if (exp < -M_ || exp >= M_) return 0;
        return c_[std::size_t(exp + M_)];
    }
    void set(int exp, int coef) {
        if (exp < -M_ || exp >= M_)
            throw WindowError("exponent " + std::to_string(exp) + " outside the window");
        c_[std::size_t(exp + M_)] = ((coef % p_) + p_) % p_;
    }

    bool is_zero() const {
        for (int v : c_)
            if (v) return false;
        return true;
    }

    /// Least exponent with a nonzero coefficient; M for the zero vector.
    int valuation() const {
        for (int e = -M_; e < M_; ++e)
            if (get(e)) return e;
        return M_;
    }

    friend LaurentF operator+(const LaurentF& a, const LaurentF& b) {
        LaurentF out(a.p_, a.M_);
        for (int e = -a.M_; e < a.M_; ++e) out.set(e, a.get(e) + b.get(e));
        return out;
    }

    /// Product truncated above cap (exclusive); exact on all kept exponents
    /// because coefficients below the window are known to vanish.
    LaurentF mul_truncated(const LaurentF& b, int cap) const {
        LaurentF out(p_, M_);
        for (int e1 = -M_; e1 < M_; ++e1) {
            if (!get(e1)) continue;
            for (int e2 = -M_; e2 < M_; ++e2) {
                if (!b.get(e2)) continue;
                int e = e1 + e2;
                if (e >= cap) continue;
                if (e < -M_ || e >= M_)
                    throw WindowError("product exponent outside the window");
                out.set(e, out.get(e) + get(e1) * b.get(e2));
            }
        }
        return out;
    }

    /// Residue pairing value: the coefficient of u^{-1-omega_val} in a*b,
    /// always exact for finite-support vectors.
    static int res_pair(const LaurentF& a, const LaurentF& b, int omega_val) {
        int target = -1 - omega_val;
        long long acc = 0;
        for (int e = -a.M_; e < a.M_; ++e) {
            if (!a.get(e)) continue;
            acc += 1LL * a.get(e) * b.get(target - e);
        }
        return int(((acc % a.p_) + a.p_) % a.p_);
    }

    friend bool operator==(const LaurentF& a, const LaurentF& b) {
        return a.p_ == b.p_ && a.M_ == b.M_ && a.c_ == b.c_;
    }

private:
    int p_, M_;
    std::vector<int> c_;
};

/// Locally constant function supported in the n-th ideal power and constant
/// on cosets of the m-th: a table of values over the finite quotient, indexed
/// by digit vectors (coefficients of u^n .. u^{m-1}).
class FiniteFunction {
public:
    FiniteFunction(int p, int M, int n, int m)
        : p_(p), M_(M), n_(n), m_(m),
          values_(table_size(p, n, m), CyclotomicScalar(p)) {
        if (n > m) throw ValidationError("empty quotient window");
        if (n < -M || m > M) throw WindowError("quotient window outside the model window");
    }

    int p() const { return p_; }
    int M() const { return M_; }
    int lower() const { return n_; }
    int upper() const { return m_; }
    std::size_t size() const { return values_.size(); }

    const CyclotomicScalar& value(std::size_t idx) const { return values_[idx]; }
    void set_value(std::size_t idx, const CyclotomicScalar& v) { values_[idx] = v; }

    /// Coset representative for a table index.
    LaurentF rep(std::size_t idx) const {
        LaurentF x(p_, M_);
        for (int e = n_; e < m_; ++e) {
            x.set(e, int(idx % std::size_t(p_)));
            idx /= std::size_t(p_);
        }
        return x;
    }

    std::size_t index_of(const LaurentF& x) const {
        std::size_t idx = 0, mult = 1;
        for (int e = n_; e < m_; ++e) {
            idx += std::size_t(x.get(e)) * mult;
            mult *= std::size_t(p_);
        }
        return idx;
    }

    /// Value at any vector: zero outside the supporting ideal power.
    CyclotomicScalar value_at(const LaurentF& x) const {
        for (int e = -M_; e < n_; ++e)
            if (x.get(e)) return CyclotomicScalar(p_);
        return values_[index_of(x)];
    }

    /// Indicator of the coset a + (m-th ideal power).
    static FiniteFunction indicator(int p, int M, int n, int m, const LaurentF& a) {
        FiniteFunction f(p, M, n, m);
        f.values_[f.index_of(a)] = CyclotomicScalar::from_rational(p, 1);
        return f;
    }

    /// Indicator of the whole n0-th ideal power inside the window (n, m).
    static FiniteFunction ideal_indicator(int p, int M, int n, int m, int n0) {
        FiniteFunction f(p, M, n, m);
        for (std::size_t i = 0; i < f.size(); ++i) {
            LaurentF x = f.rep(i);
            if (x.valuation() >= n0 || x.is_zero())
                f.values_[i] = CyclotomicScalar::from_rational(p, 1);
        }
        return f;
    }

    friend FiniteFunction operator+(const FiniteFunction& a, const FiniteFunction& b) {
        if (a.p_ != b.p_ || a.n_ != b.n_ || a.m_ != b.m_)
            throw MismatchError("cannot add functions on different quotients");
        FiniteFunction out = a;
        for (std::size_t i = 0; i < out.values_.size(); ++i)
            out.values_[i] = out.values_[i] + b.values_[i];
        return out;
    }

    FiniteFunction scaled(const CyclotomicScalar& c) const {
        FiniteFunction out = *this;
        for (auto& v : out.values_) v = v * c;
        return out;
    }

    friend bool operator==(const FiniteFunction& a, const FiniteFunction& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.m_ == b.m_ && a.values_ == b.values_;
    }

    /// Pullback along multiplication by a unit representative.
    FiniteFunction unit_translate(const LaurentF& unit) const {
        FiniteFunction out(p_, M_, n_, m_);
        for (std::size_t i = 0; i < out.size(); ++i) {
            LaurentF x = out.rep(i).mul_truncated(unit, m_);
            out.values_[i] = values_[index_of(x)];
        }
        return out;
    }

    /// Pullback along multiplication by the local parameter (shifts windows).
    FiniteFunction u_translate() const {
        FiniteFunction out(p_, M_, n_ + 1, m_ + 1);
        for (std::size_t i = 0; i < out.size(); ++i) {
            LaurentF x = out.rep(i);
            LaurentF y(p_, M_);
            for (int e = n_; e < m_; ++e) y.set(e, x.get(e + 1));
            out.values_[i] = values_[index_of(y)];
        }
        return out;
    }

private:
    static std::size_t table_size(int p, int n, int m) {
        std::size_t s = 1;
        for (int i = 0; i < m - n; ++i) {
            s *= std::size_t(p);
            if (s > (1u << 20)) throw WindowError("quotient too large");
        }
        return s;
    }

    int p_, M_, n_, m_;
    std::vector<CyclotomicScalar> values_;
};

/// Total mass against the Haar measure normalized to give the valuation ring
/// measure one.
inline CyclotomicScalar haar_integral(const FiniteFunction& f) {
    CyclotomicScalar acc(f.p());
    for (std::size_t i = 0; i < f.size(); ++i) acc = acc + f.value(i);
    Rational mass = Rational(1);
    for (int i = 0; i < f.upper(); ++i) mass /= f.p();
    for (int i = 0; i > f.upper(); --i) mass *= f.p();
    return acc.scaled(mass);
}

/// Additive-character transform with the form of order omega_val; the output
/// window is the dual window, which must fit inside the model.
inline FiniteFunction fourier_local(const FiniteFunction& f, int omega_val) {
    int p = f.p(), M = f.M();
    int n_out = -f.upper() - omega_val, m_out = -f.lower() - omega_val;
    if (n_out < -M || m_out > M)
        throw WindowError("dual window does not fit the model window");
    FiniteFunction out(p, M, n_out, m_out);
    Rational mass = Rational(1);
    for (int i = 0; i < f.upper(); ++i) mass /= p;
    for (int i = 0; i > f.upper(); --i) mass *= p;
    for (std::size_t bi = 0; bi < out.size(); ++bi) {
        LaurentF b = out.rep(bi);
        CyclotomicScalar acc(p);
        for (std::size_t ai = 0; ai < f.size(); ++ai) {
            if (f.value(ai).is_zero()) continue;
            LaurentF a = f.rep(ai);
            int t = LaurentF::res_pair(a, b, omega_val);
            acc = acc + f.value(ai) * CyclotomicScalar::psi(p, -t);
        }
        out.set_value(bi, acc.scaled(mass));
    }
    return out;
}

/// True when the function is constant on the orbits of the unit group,
/// equivalently factors through the valuation.
inline bool unit_invariant(const FiniteFunction& f) {
    std::map<int, CyclotomicScalar> seen;
    for (std::size_t i = 0; i < f.size(); ++i) {
        LaurentF x = f.rep(i);
        int v = x.is_zero() ? f.upper() : x.valuation();
        auto it = seen.find(v);
        if (it == seen.end())
            seen.emplace(v, f.value(i));
        else if (!(it->second == f.value(i)))
            return false;
    }
    return true;
}

/// Restriction of an invariant function to the powers of the local parameter.
inline FnZ<CyclotomicScalar> i_map(const FiniteFunction& f, std::int64_t fiber = 0) {
    if (!unit_invariant(f)) throw ValidationError("function is not unit-invariant");
    std::vector<CyclotomicScalar> vals;
    for (int e = f.lower(); e < f.upper(); ++e)
        vals.push_back(f.value_at(LaurentF::monomial(f.p(), f.M(), e)));
    CyclotomicScalar tail = f.value(0); // the zero coset
    return FnZ<CyclotomicScalar>(fiber, f.lower(), std::move(vals), tail);
}

/// Shell averages: the descent of any function to the coinvariants.
inline FnZ<CyclotomicScalar> j_map(const FiniteFunction& f, std::int64_t fiber = 0) {
    int p = f.p();
    std::vector<CyclotomicScalar> vals;
    for (int v = f.lower(); v < f.upper(); ++v) {
        CyclotomicScalar acc(p);
        std::size_t count = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            LaurentF x = f.rep(i);
            if (!x.is_zero() && x.valuation() == v) {
                acc = acc + f.value(i);
                ++count;
            }
        }
        // average over the shell: the shell has count cosets of equal mass
        acc = acc.scaled(Rational(BigInt(1), BigInt(count)));
        vals.push_back(acc);
    }
    return FnZ<CyclotomicScalar>(fiber, f.lower(), std::move(vals), f.value(0));
}

enum class DistKind { Delta0, Haar };

/// Diagonal value of the descended distribution: its pairing with the
/// indicator of the x-th ideal power, computed in the finite model.
inline Rational dist_image_diag(DistKind kind, int x, int p, int M) {
    FiniteFunction ind = FiniteFunction::ideal_indicator(p, M, -M, M, x);
    CyclotomicScalar v =
        kind == DistKind::Delta0 ? ind.value_at(LaurentF(p, M)) : haar_integral(ind);
    return v.rational_part();
}

inline Rational dist_image_offdiag(DistKind kind, int y, int /*x*/, int p, int M) {
    return dist_image_diag(kind, y, p, M) - dist_image_diag(kind, y + 1, p, M);
}

/// Packages the model values into a rank-1 distribution with ratio p, fitting
/// the two tails from the window boundary values.
inline DistZ<Scalar> dist_images(DistKind kind, int p, int M) {
    int lo = -M + 1, hi = M - 1;
    Scalar rho = Scalar(p);
    // fit a_x = c + g * p^{-x} on the two lowest and two highest points
    auto fit = [&](int x0, int x1) {
        Rational a0 = dist_image_diag(kind, x0, p, M), a1 = dist_image_diag(kind, x1, p, M);
        // solve c + g p^{-x0} = a0, c + g p^{-x1} = a1
        Rational p0 = 1, p1 = 1;
        for (int i = 0; i < x0; ++i) p0 /= p;
        for (int i = 0; i > x0; --i) p0 *= p;
        for (int i = 0; i < x1; ++i) p1 /= p;
        for (int i = 0; i > x1; --i) p1 *= p;
        Rational g = (a0 - a1) / (p0 - p1);
        Rational c = a0 - g * p0;
        return std::pair<Scalar, Scalar>(Scalar(c), Scalar(g));
    };
    auto [lc, lg] = fit(lo, lo + 1);
    auto [hc, hg] = fit(hi - 1, hi);
    std::vector<Scalar> midv;
    for (int x = lo + 1; x < hi; ++x) midv.push_back(Scalar(dist_image_diag(kind, x, p, M)));
    return DistZ<Scalar>(0, rho, lo, hi, lc, lg, std::move(midv), hc, hg);
}

} // namespace rk2
