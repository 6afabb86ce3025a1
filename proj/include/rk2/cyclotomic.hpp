#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rk2/scalar.hpp"

namespace rk2 {

/// Element of the p-th cyclotomic field Q(zeta_p), p prime, represented by
/// rational coordinates in the power basis 1, zeta, ..., zeta^{p-2}.
class CyclotomicScalar {
public:
    explicit CyclotomicScalar(int p) : p_(check_prime(p)), c_(std::size_t(p - 1)) {}

    static CyclotomicScalar from_rational(int p, const Rational& q) {
        CyclotomicScalar x(p);
        x.c_[0] = q;
        return x;
    }

    /// zeta_p^k for any integer k.
    static CyclotomicScalar zeta_pow(int p, long long k) {
        CyclotomicScalar x(p);
        long long e = ((k % p) + p) % p;
        if (e == p - 1) {
            for (auto& v : x.c_) v = Rational(-1);
        } else {
            x.c_[std::size_t(e)] = Rational(1);
        }
        return x;
    }

    /// Character value psi(t) = zeta_p^t for a residue t.
    static CyclotomicScalar psi(int p, long long t) { return zeta_pow(p, t); }

    int prime() const { return p_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rational rational_part() const {
        if (!is_rational()) throw ValidationError("cyclotomic value is not rational");
        return c_[0];
    }

    friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        return !(a == b);
    }

    friend CyclotomicScalar operator+(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        check_same(a, b);
        CyclotomicScalar out(a.p_);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
        return out;
    }
    friend CyclotomicScalar operator-(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        check_same(a, b);
        CyclotomicScalar out(a.p_);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
        return out;
    }
    friend CyclotomicScalar operator-(const CyclotomicScalar& a) {
        CyclotomicScalar out(a.p_);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = -a.c_[i];
        return out;
    }

    friend CyclotomicScalar operator*(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        check_same(a, b);
        int p = a.p_;
        // Multiply modulo zeta^p = 1, then eliminate the zeta^{p-1} coordinate.
        std::vector<Rational> acc(static_cast<std::size_t>(p), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                acc[(i + j) % std::size_t(p)] += a.c_[i] * b.c_[j];
            }
        }
        CyclotomicScalar out(p);
        Rational top = acc[std::size_t(p - 1)];
        for (std::size_t i = 0; i + 1 < acc.size(); ++i) out.c_[i] = acc[i] - top;
        return out;
    }

    CyclotomicScalar scaled(const Rational& q) const {
        CyclotomicScalar out(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * q;
        return out;
    }

    CyclotomicScalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic value");
        // Extended Euclid in Q[x] against the p-th cyclotomic polynomial.
        std::vector<Rational> phi(std::size_t(p_), Rational(1));
        std::vector<Rational> a(c_.begin(), c_.end());
        auto [g, inv] = bezout_mod(a, phi);
        if (g.size() != 1) throw Error("cyclotomic inverse: gcd not constant");
        CyclotomicScalar out(p_);
        for (std::size_t i = 0; i < inv.size() && i < out.c_.size(); ++i)
            out.c_[i] = inv[i] / g[0];
        return out;
    }

    friend CyclotomicScalar operator/(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        return a * b.inverse();
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += Scalar::to_plain_string(c_[i]);
            if (i >= 1) out += "*z" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out.empty() ? "0" : out;
    }

private:
    static int check_prime(int p) {
        if (p < 2) throw ValidationError("cyclotomic prime must be >= 2");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw ValidationError("cyclotomic index must be prime");
        return p;
    }
    static void check_same(const CyclotomicScalar& a, const CyclotomicScalar& b) {
        if (a.p_ != b.p_) throw MismatchError("cyclotomic elements with different primes");
    }

    using QPoly = std::vector<Rational>; // dense, low first, trailing zeros trimmed

    static void trim(QPoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static QPoly rem(QPoly a, const QPoly& b) {
        trim(a);
        while (a.size() >= b.size() && !a.empty()) {
            Rational q = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            trim(a);
        }
        return a;
    }

    /// Returns (gcd, u) with u * a = gcd (mod m).
    static std::pair<QPoly, QPoly> bezout_mod(QPoly a, QPoly m) {
        trim(a);
        trim(m);
        QPoly r0 = m, r1 = a;
        QPoly u0, u1{Rational(1)};
        while (!r1.empty()) {
            // quotient of r0 by r1
            QPoly q;
            QPoly rest = r0;
            trim(rest);
            if (rest.size() >= r1.size()) {
                q.assign(rest.size() - r1.size() + 1, Rational(0));
                while (rest.size() >= r1.size() && !rest.empty()) {
                    Rational qc = rest.back() / r1.back();
                    std::size_t shift = rest.size() - r1.size();
                    q[shift] += qc;
                    for (std::size_t i = 0; i < r1.size(); ++i) rest[shift + i] -= qc * r1[i];
                    trim(rest);
                }
            }
            QPoly r2 = rest;
            QPoly u2 = sub(u0, mul(q, u1));
            r0 = r1;
            r1 = r2;
            u0 = u1;
            u1 = u2;
        }
        // r0 = gcd, u0 * a = r0 (mod m)
        return {r0, rem(u0, m)};
    }
    static QPoly mul(const QPoly& a, const QPoly& b) {
        if (a.empty() || b.empty()) return {};
        QPoly v(a.size() + b.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
        return v;
    }
    static QPoly sub(const QPoly& a, const QPoly& b) {
        QPoly v(std::max(a.size(), b.size()), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i < a.size()) v[i] += a[i];
            if (i < b.size()) v[i] -= b[i];
        }
        trim(v);
        return v;
    }

    int p_;
    std::vector<Rational> c_;
};

} // namespace rk2
