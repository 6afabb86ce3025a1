#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "rk2/errors.hpp"

namespace rk2 {

/// Element of the rank-2 value group, written against the standard section:
/// n is the image under the projection to Z, p the fiber coordinate.
struct GammaElement {
    std::int64_t n = 0;
    std::int64_t p = 0;

    friend GammaElement operator+(GammaElement a, GammaElement b) {
        return {a.n + b.n, a.p + b.p};
    }
    friend GammaElement operator-(GammaElement a, GammaElement b) {
        return {a.n - b.n, a.p - b.p};
    }
    friend GammaElement operator-(GammaElement a) { return {-a.n, -a.p}; }
    friend bool operator==(GammaElement a, GammaElement b) = default;

    std::string to_string() const {
        return "(" + std::to_string(n) + "," + std::to_string(p) + ")";
    }
};

/// Point of the extended set: a group element (n,p) or a column point
/// (n,-inf) indexing the large submodules.
struct BreveElement {
    std::int64_t n = 0;
    bool finite = false;
    std::int64_t p = 0; // meaningful only when finite

    static BreveElement column(std::int64_t n) { return {n, false, 0}; }
    static BreveElement at(std::int64_t n, std::int64_t p) { return {n, true, p}; }
    static BreveElement of(GammaElement g) { return {g.n, true, g.p}; }

    GammaElement as_gamma() const {
        if (!finite) throw MismatchError("column point is not a group element");
        return {n, p};
    }

    friend bool operator==(const BreveElement& a, const BreveElement& b) {
        return a.n == b.n && a.finite == b.finite && (!a.finite || a.p == b.p);
    }
    friend bool operator!=(const BreveElement& a, const BreveElement& b) { return !(a == b); }

    std::string to_string() const {
        return "(" + std::to_string(n) + "," + (finite ? std::to_string(p) : "-inf") + ")";
    }
};

/// Total linear order: first by column, with (n,-inf) below every (n,p).
inline std::strong_ordering compare(const BreveElement& a, const BreveElement& b) {
    if (a.n != b.n) return a.n <=> b.n;
    if (a.finite != b.finite) return a.finite ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
    if (!a.finite) return std::strong_ordering::equal;
    return a.p <=> b.p;
}
inline bool operator<(const BreveElement& a, const BreveElement& b) { return compare(a, b) < 0; }
inline bool operator>(const BreveElement& a, const BreveElement& b) { return compare(a, b) > 0; }
inline bool operator<=(const BreveElement& a, const BreveElement& b) { return compare(a, b) <= 0; }
inline bool operator>=(const BreveElement& a, const BreveElement& b) { return compare(a, b) >= 0; }

/// Commutative extension of the group law; the -inf fiber absorbs.
inline BreveElement circ(const BreveElement& a, const BreveElement& b) {
    if (a.finite && b.finite) return BreveElement::at(a.n + b.n, a.p + b.p);
    return BreveElement::column(a.n + b.n);
}
inline BreveElement circ(GammaElement a, const BreveElement& b) {
    return circ(BreveElement::of(a), b);
}

/// The loop-rotation action of C = Z: k(n,p) = (n, kn+p), fixing column points.
inline BreveElement shear(std::int64_t k, const BreveElement& b) {
    if (!b.finite) return b;
    return BreveElement::at(b.n, k * b.n + b.p);
}
inline GammaElement shear(std::int64_t k, GammaElement g) { return {g.n, k * g.n + g.p}; }

/// The order involution underlying the Fourier index reflection: the least
/// element phi with phi ∘ beta ∘ gamma > 0.
inline BreveElement perp(const BreveElement& b, GammaElement gamma) {
    if (b.finite) return BreveElement::at(-b.n - gamma.n, -b.p - gamma.p + 1);
    return BreveElement::column(-b.n - gamma.n + 1);
}
inline GammaElement perp(GammaElement b, GammaElement gamma) {
    return {-b.n - gamma.n, -b.p - gamma.p + 1};
}

inline bool is_positive(const BreveElement& b) {
    return b > BreveElement::at(0, 0);
}

} // namespace rk2
