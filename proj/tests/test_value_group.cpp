#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "rk2/value_group.hpp"

using namespace rk2;

namespace {

// Brute-force reflection: the minimum over a bounded window of all phi with
// phi ∘ beta ∘ gamma > 0.  Large enough windows make the scan exact.
std::optional<BreveElement> perp_by_search(const BreveElement& b, GammaElement g, int W) {
    std::optional<BreveElement> best;
    auto consider = [&](const BreveElement& phi) {
        if (!is_positive(circ(phi, circ(b, BreveElement::of(g))))) return;
        if (!best || phi < *best) best = phi;
    };
    for (int n = -W; n <= W; ++n) {
        consider(BreveElement::column(n));
        for (int p = -W; p <= W; ++p) consider(BreveElement::at(n, p));
    }
    return best;
}

std::vector<BreveElement> sample_points(int N, int P) {
    std::vector<BreveElement> out;
    for (int n = -N; n <= N; ++n) {
        out.push_back(BreveElement::column(n));
        for (int p = -P; p <= P; ++p) out.push_back(BreveElement::at(n, p));
    }
    return out;
}

} // namespace

TEST_CASE("linear order on the extended set") {
    CHECK(BreveElement::column(0) < BreveElement::at(0, 5));
    CHECK(BreveElement::column(1) > BreveElement::at(0, 100));
    CHECK(compare(BreveElement::at(2, 3), BreveElement::at(2, 3)) == std::strong_ordering::equal);
    CHECK(BreveElement::at(0, -3) < BreveElement::at(0, 0));
}

TEST_CASE("circ extends the group law with absorbing column points") {
    CHECK(circ(BreveElement::at(1, 2), BreveElement::at(3, 4)) == BreveElement::at(4, 6));
    CHECK(circ(BreveElement::at(1, 2), BreveElement::column(3)) == BreveElement::column(4));
    CHECK(circ(BreveElement::column(0), BreveElement::column(0)) == BreveElement::column(0));
}

TEST_CASE("shear action") {
    CHECK(shear(2, BreveElement::at(3, 1)) == BreveElement::at(3, 7));
    CHECK(shear(5, BreveElement::column(4)) == BreveElement::column(4));
    for (auto& x : sample_points(3, 3)) CHECK(shear(0, x) == x);
}

TEST_CASE("shear distributes over circ") {
    for (auto& a : sample_points(2, 2))
        for (auto& b : sample_points(2, 2))
            for (std::int64_t k : {-2, 1, 3})
                CHECK(shear(k, circ(a, b)) == circ(shear(k, a), shear(k, b)));
}

TEST_CASE("reflection closed form") {
    GammaElement zero{0, 0};
    CHECK(perp(BreveElement::column(4), zero) == BreveElement::column(-3));
    CHECK(perp(BreveElement::at(2, 5), zero) == BreveElement::at(-2, -4));
    CHECK(perp(BreveElement::at(2, 5), GammaElement{1, 1}) == BreveElement::at(-3, -5));
}

TEST_CASE("reflection agrees with the brute-force minimum") {
    for (auto& b : sample_points(2, 2))
        for (std::int64_t gn : {-1, 0, 1})
            for (std::int64_t gp : {-2, 0, 2}) {
                GammaElement g{gn, gp};
                auto found = perp_by_search(b, g, 12);
                REQUIRE(found.has_value());
                CHECK(*found == perp(b, g));
            }
}

TEST_CASE("reflection is an involution") {
    for (auto& b : sample_points(3, 3))
        for (std::int64_t gn : {-2, 0, 1})
            for (std::int64_t gp : {-1, 0, 3}) {
                GammaElement g{gn, gp};
                CHECK(perp(perp(b, g), g) == b);
            }
}

TEST_CASE("reflection anti-equivariance and base-change") {
    for (auto& a : sample_points(2, 2)) {
        GammaElement g{1, -2}, g2{-1, 1};
        GammaElement phi{2, -1};
        // (phi ∘ a)^perp(g) = (-phi) ∘ a^perp(g)
        CHECK(perp(circ(phi, a), g) == circ(-phi, perp(a, g)));
        // a^perp(g+g2) = (-g2) ∘ a^perp(g)
        CHECK(perp(a, g + g2) == circ(-g2, perp(a, g)));
    }
}

TEST_CASE("reflection commutes with shear for vertical gamma") {
    for (auto& b : sample_points(2, 2))
        for (std::int64_t m : {-1, 2})
            for (std::int64_t gp : {-1, 0, 2}) {
                GammaElement g{0, gp};
                CHECK(shear(m, perp(b, g)) == perp(shear(m, b), g));
            }
}

TEST_CASE("order is compatible with translation") {
    for (auto& a : sample_points(2, 2))
        for (auto& b : sample_points(2, 2)) {
            GammaElement phi{1, -1};
            CHECK((a < b) == (circ(phi, a) < circ(phi, b)));
        }
}
