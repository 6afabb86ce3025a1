#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rk2/errors.hpp"

namespace rk2 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

/// Dense integer-coefficient polynomial in one formal variable, stored
/// low degree first with no trailing zero.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long long c) { if (c != 0) c_.push_back(BigInt(c)); }
    IntPoly(const BigInt& c) { if (c != 0) c_.push_back(c); }
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(const BigInt& coef, int deg) {
        if (coef == 0) return IntPoly();
        std::vector<BigInt> v(static_cast<std::size_t>(deg) + 1);
        v.back() = coef;
        return IntPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    BigInt coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return BigInt(0);
        return c_[static_cast<std::size_t>(k)];
    }
    const BigInt& leading() const { return c_.back(); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(int(i)) + b.coeff(int(i));
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(int(i)) - b.coeff(int(i));
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a) { return IntPoly() - a; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(v));
    }

    /// gcd of all coefficients, non-negative; 0 for the zero polynomial.
    BigInt content() const {
        BigInt g(0);
        for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
        return g;
    }

    IntPoly divided_by_int(const BigInt& d) const {
        std::vector<BigInt> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / d;
        return IntPoly(std::move(v));
    }

    IntPoly primitive_part() const {
        if (is_zero()) return IntPoly();
        BigInt g = content();
        if (leading() < 0) g = -g;
        return divided_by_int(g);
    }

    /// Pseudo-remainder of a by b (b nonzero).
    static IntPoly prem(IntPoly a, const IntPoly& b) {
        int db = b.degree();
        while (!a.is_zero() && a.degree() >= db) {
            int shift = a.degree() - db;
            IntPoly t = IntPoly::monomial(a.leading(), shift) * b;
            a = a.scaled(b.leading()) - t;
        }
        return a;
    }

    IntPoly scaled(const BigInt& s) const {
        std::vector<BigInt> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
        return IntPoly(std::move(v));
    }

    /// Full gcd in Z[r] (content times primitive gcd), positive leading coefficient.
    static IntPoly gcd(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part().scaled(b.content());
        if (b.is_zero()) return a.primitive_part().scaled(a.content());
        BigInt cont = boost::multiprecision::gcd(a.content(), b.content());
        IntPoly x = a.primitive_part(), y = b.primitive_part();
        while (!y.is_zero()) {
            IntPoly r = prem(x, y).primitive_part();
            x = y;
            y = r;
        }
        return x.scaled(cont);
    }

    /// Exact division (caller guarantees divisibility).
    IntPoly divided_by(const IntPoly& d) const {
        IntPoly rem = *this;
        if (d.is_zero()) throw DivisionByZero();
        std::vector<BigInt> q(rem.is_zero() || rem.degree() < d.degree()
                                  ? 0
                                  : std::size_t(rem.degree() - d.degree()) + 1);
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            BigInt qc = rem.leading() / d.leading();
            q[static_cast<std::size_t>(shift)] = qc;
            rem = rem - IntPoly::monomial(qc, shift) * d;
        }
        return IntPoly(std::move(q));
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    }

    std::string to_string(const std::string& var = "r") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            BigInt c = coeff(k);
            if (c == 0) continue;
            bool neg = c < 0;
            BigInt a = boost::multiprecision::abs(c);
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string mag = a.str();
            if (k == 0)
                out += mag;
            else {
                if (a != 1) out += mag + "*";
                out += var;
                if (k != 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

} // namespace detail

/// Element of the field Q(r) of rational functions in the formal deformation
/// parameter r, kept in a unique canonical form: numerator and denominator
/// are coprime integer polynomials, jointly content-free, with a positive
/// leading denominator coefficient.
class Scalar {
public:
    Scalar() : num_(), den_(1) {}
    Scalar(long long n) : num_(n), den_(1) {}
    Scalar(const BigInt& n) : num_(n), den_(1) {}
    Scalar(const Rational& q)
        : num_(boost::multiprecision::numerator(q)),
          den_(boost::multiprecision::denominator(q)) {}

    static Scalar from_fraction(detail::IntPoly num, detail::IntPoly den) {
        Scalar s;
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        s.normalize();
        return s;
    }

    /// The formal parameter r.
    static Scalar r() { return r_pow(1); }

    /// r^k for any integer k.
    static Scalar r_pow(long long k) {
        if (k >= 0)
            return from_fraction(detail::IntPoly::monomial(1, static_cast<int>(k)), detail::IntPoly(1));
        return from_fraction(detail::IntPoly(1), detail::IntPoly::monomial(1, static_cast<int>(-k)));
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    const detail::IntPoly& num() const { return num_; }
    const detail::IntPoly& den() const { return den_; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return from_fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return from_fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a) { return from_fraction(-a.num_, a.den_); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return from_fraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw DivisionByZero();
        return from_fraction(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        return from_fraction(den_, num_);
    }

    /// Exact specialization r -> q.  Throws PoleError when the denominator
    /// vanishes at q.
    Rational eval_at(const Rational& q) const {
        Rational d = den_.eval(q);
        if (d == 0) throw PoleError("pole at r = " + to_plain_string(q));
        return num_.eval(q) / d;
    }

    /// Rational constant extraction; throws unless the element is free of r.
    Rational as_rational() const {
        if (num_.degree() > 0 || den_.degree() > 0)
            throw ValidationError("scalar is not a rational constant: " + to_string());
        return Rational(num_.coeff(0), den_.coeff(0));
    }

    std::string to_string() const {
        if (den_ == detail::IntPoly(1)) return num_.to_string();
        std::string n = num_.to_string();
        std::string d = den_.to_string();
        if (num_.degree() > 0) n = "(" + n + ")";
        if (den_.degree() > 0) d = "(" + d + ")";
        return n + "/" + d;
    }

    static std::string to_plain_string(const Rational& q) {
        std::string s = boost::multiprecision::numerator(q).str();
        if (boost::multiprecision::denominator(q) != 1)
            s += "/" + boost::multiprecision::denominator(q).str();
        return s;
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = detail::IntPoly(1);
            return;
        }
        detail::IntPoly g = detail::IntPoly::gcd(num_, den_);
        num_ = num_.divided_by(g);
        den_ = den_.divided_by(g);
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    detail::IntPoly num_, den_;
};

/// x^e in any exact field, e possibly negative.
template <class F>
F pow_int(const F& x, long long e) {
    if (e < 0) return pow_int(F(1) / x, -e);
    F acc(1), base = x;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

inline Scalar r_pow(long long k) { return Scalar::r_pow(k); }

} // namespace rk2
