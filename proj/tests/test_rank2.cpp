#include <catch2/catch_amalgamated.hpp>

#include "rk2/rank2.hpp"
#include "rk2/rng.hpp"

using namespace rk2;

namespace {
const BreveElement a0 = BreveElement::column(0);
}

TEST_CASE("characteristic elements of staircases") {
    SECTION("standard staircase at the standard base point") {
        auto q = RankTwoFunction::delta_staircase(Staircase::standard(), a0);
        for (std::int64_t k : {-3L, 0L, 2L}) CHECK(q.slot_product(k) == delta_geq(k, 0));
    }
    SECTION("matching condition holds for every staircase") {
        for (auto Z : {Staircase(1, 0), Staircase(0, 2, {{1, -1}}), Staircase(-2, 3, {{0, 5}})})
            for (auto alpha : {a0, BreveElement::at(1, 2), BreveElement::column(-2)}) {
                auto q = RankTwoFunction::delta_staircase(Z, alpha);
                for (std::int64_t k = -4; k <= 4; ++k) {
                    CHECK(delta_infty_of(q.slot_product(k)) ==
                          detail::canonical_eta_pair(q.slot_product(k + 1)));
                }
                // revalidating a materialized window accepts the element
                auto back = RankTwoFunction::from_normalized(alpha, Z, -2, q.materialized(-2, 2),
                                                             BelowMode::Staircase);
                CHECK(back == q);
            }
    }
    SECTION("zero element") {
        CHECK(RankTwoFunction::zero(a0).is_zero());
        CHECK(RankTwoFunction::delta_staircase(Staircase::standard(), a0, Scalar(0)).is_zero());
    }
}

TEST_CASE("validated construction") {
    SECTION("a vacuous window gives the characteristic element") {
        auto q = RankTwoFunction::make(a0, Staircase::standard(), 0, {}, BelowMode::Staircase);
        CHECK(q == RankTwoFunction::delta_staircase(Staircase::standard(), a0));
    }
    SECTION("a single consistent slot is accepted") {
        std::vector<RankTwoFunction::RawSlot> slots{
            {delta_geq(0, 0), mu_base(BreveElement::column(1), a0)}};
        auto q = RankTwoFunction::make(a0, Staircase::standard(), 0, slots,
                                       BelowMode::Staircase);
        CHECK(q.slot_product(0) == delta_geq(0, 0));
        // the upper tail coefficient is pinned by the junction
        CHECK(q.slot_product(1) == delta_geq(1, 0));
        CHECK(q.slot_product(5) == delta_geq(5, 0));
        // the lower staircase tail continues with the measure pairing
        CHECK(q.slot_product(-1) == delta_geq(-1, 0));
    }
    SECTION("a violated junction is reported with its slot") {
        std::vector<RankTwoFunction::RawSlot> slots{
            {delta_geq(0, 0), mu_base(BreveElement::column(1), a0)},
            {delta_geq(1, 0).scaled(Scalar(2)), mu_base(BreveElement::column(2), a0)}};
        CHECK_THROWS_MATCHES(
            RankTwoFunction::make(a0, Staircase::standard(), 0, slots, BelowMode::Staircase),
            ValidationError, Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("slot 0")));
    }
    SECTION("zero lower mode enforces the boundary condition") {
        std::vector<RankTwoFunction::RawSlot> slots{
            {delta_geq(0, 0), mu_base(BreveElement::column(1), a0)}};
        CHECK_THROWS_AS(
            RankTwoFunction::make(a0, Staircase::standard(), 0, slots, BelowMode::Zero),
            ValidationError);
        // a function with vanishing measure pairing is accepted
        auto f = delta_geq(0, 0) - delta_geq(0, 1).scaled(r_pow(1));
        std::vector<RankTwoFunction::RawSlot> ok{{f, mu_base(BreveElement::column(1), a0)}};
        auto q = RankTwoFunction::make(a0, Staircase::standard(), 0, ok, BelowMode::Zero);
        CHECK(q.slot_product(-1).is_zero());
        CHECK(q.slot_product(-7).is_zero());
    }
    SECTION("zero measure on the support is rejected") {
        std::vector<RankTwoFunction::RawSlot> slots{
            {delta_geq(0, 0), MeasureElement{BreveElement::column(1), a0, Scalar(0)}}};
        CHECK_THROWS_AS(
            RankTwoFunction::make(a0, Staircase::standard(), 0, slots, BelowMode::Staircase),
            ValidationError);
    }
    SECTION("random valid elements satisfy every junction") {
        Rng rng(7);
        for (int i = 0; i < 30; ++i) {
            auto q = rng.rank2_fn(rng.breve(3, 4), 5);
            for (std::int64_t k = q.klo() - 3; k <= q.khi() + 3; ++k)
                CHECK(delta_infty_of(q.slot_product(k)) ==
                      detail::canonical_eta_pair(q.slot_product(k + 1)));
        }
    }
}

TEST_CASE("normal form of distributions") {
    SECTION("the defining relation is collapsed") {
        // a pure constant component at slot k equals the measure at slot k+1
        auto s1 = RankTwoDistribution::reduce_normalized(
            a0, {{0, dist_delta_plus_infinity(0).scaled(Scalar(3))}});
        auto s2 = RankTwoDistribution::reduce_normalized(a0, {{1, dist_eta(1, Scalar(3))}});
        CHECK(s1 == s2);
        CHECK(s1.slot(1) == dist_eta(1, Scalar(3)));
        CHECK(s1.slot(0).is_zero());
    }
    SECTION("already-normal input is a fixed point") {
        auto g = dist_eta(0, Scalar(2)) +
                 RankOneDistribution::spike(0, Scalar::r(), 2, Scalar(5));
        auto s = RankTwoDistribution::reduce_normalized(a0, {{0, g}});
        CHECK(s.slot(0) == g);
        auto again = RankTwoDistribution::reduce_normalized(a0, {{0, s.slot(0)}});
        CHECK(again == s);
    }
    SECTION("mixed components cascade upward") {
        // constant + geometric at one slot: the constant part moves up
        auto mix = dist_delta_plus_infinity(0) + dist_eta(0, Scalar(4));
        auto s = RankTwoDistribution::reduce_normalized(a0, {{0, mix}});
        CHECK(s.slot(0) == dist_eta(0, Scalar(4)));
        CHECK(s.slot(1) == dist_eta(1, Scalar(1)));
    }
    SECTION("random relation combinations vanish") {
        Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            std::int64_t k = rng.range(-3, 3);
            Scalar c = rng.small_scalar();
            auto s = RankTwoDistribution::reduce_normalized(
                a0, {{k, dist_delta_plus_infinity(k).scaled(c)},
                     {k + 1, dist_eta(k + 1, Scalar(0) - c)}});
            CHECK(s.is_zero());
        }
    }
}

TEST_CASE("characteristic distributions of submodule indices") {
    SECTION("group point at the origin") {
        auto s = delta_gamma(BreveElement::at(0, 0), mu_base(a0, BreveElement::at(0, 0)), a0);
        REQUIRE(s.terms().size() == 1);
        const auto& g = s.slot(0);
        CHECK(g.at(0) == Scalar(1));
        CHECK(g.at(-3) == Scalar(1));
        CHECK(g.at(2) == r_pow(-2));
    }
    SECTION("pairing against the standard characteristic element") {
        auto q = RankTwoFunction::delta_staircase(Staircase::standard(), a0);
        for (std::int64_t n : {-1L, 0L, 1L})
            for (std::int64_t p : {-2L, 0L, 2L}) {
                BreveElement g = BreveElement::at(n, p);
                auto s = delta_gamma(g, mu_base(a0, g), a0);
                CHECK(pair_rank2(q, s) == Scalar(1));
            }
    }
    SECTION("column points give measure-type terms") {
        BreveElement g = BreveElement::column(2);
        auto s = delta_gamma(g, mu_base(a0, g), a0);
        CHECK(s.slot(2) == dist_eta(2, Scalar(1)));
    }
    SECTION("zero weight gives the zero distribution") {
        BreveElement g = BreveElement::at(0, 0);
        auto s = delta_gamma(g, MeasureElement{a0, g, Scalar(0)}, a0);
        CHECK(s.is_zero());
    }
    SECTION("translation equivariance of the family") {
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            BreveElement alpha = rng.breve(2, 3);
            GammaElement g0 = rng.gamma(3);
            BreveElement gamma = BreveElement::of(g0);
            MeasureElement b{alpha, gamma, rng.unit_scalar()};
            auto s = delta_gamma(gamma, b, alpha);
            HeisTilde w = rng.tilde(alpha, 3);
            // the action moves the family to the translated index with the
            // transported weight
            BreveElement gimg = circ(w.beta, gamma);
            MeasureElement bimg = mu_tensor(mu_of_torsor(w.h), mu_gamma_act(w.beta, b));
            CHECK(act_tilde(w, s) == delta_gamma(gimg, bimg, alpha));
        }
    }
}

TEST_CASE("pairing is well-defined and bilinear") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        BreveElement alpha = rng.breve(3, 4);
        auto q = rng.rank2_fn(alpha, 4);
        auto s1 = rng.rank2_dist(alpha, 2);
        auto s2 = rng.rank2_dist(alpha, 2);
        CHECK(pair_rank2(q, s1 + s2) == pair_rank2(q, s1) + pair_rank2(q, s2));
        Scalar c = rng.small_scalar();
        CHECK(pair_rank2(q.scaled(c), s1) == c * pair_rank2(q, s1));
        CHECK(pair_rank2(RankTwoFunction::zero(alpha), s1) == Scalar(0));
    }
    CHECK_THROWS_AS(pair_rank2(RankTwoFunction::zero(a0),
                               RankTwoDistribution::zero(BreveElement::column(1))),
                    MismatchError);
}

TEST_CASE("trivialization against a staircase") {
    Rng rng(13);
    SECTION("self-trivialization of the characteristic element") {
        auto q = RankTwoFunction::delta_staircase(Staircase::standard(), a0);
        for (std::int64_t k : {-2L, 0L, 3L})
            CHECK(psi_trivialize_slot(q, Staircase::standard(), k) == delta_geq(k, 0));
    }
    SECTION("twisted matching condition and round trip") {
        for (int i = 0; i < 20; ++i) {
            BreveElement alpha = rng.breve(2, 3);
            auto q = rng.rank2_fn(alpha, 4);
            Staircase Zpsi = rng.staircase();
            auto [lo, hi] = q.work_window();
            std::vector<RankOneFunction> triv;
            for (std::int64_t k = lo - 1; k <= hi + 1; ++k)
                triv.push_back(psi_trivialize_slot(q, Zpsi, k));
            // the trivialized family satisfies the staircase-twisted junctions
            for (std::size_t j = 0; j + 1 < triv.size(); ++j) {
                std::int64_t k = lo - 1 + static_cast<std::int64_t>(j);
                Scalar eta_z = r_pow(Zpsi.floor_at(k + 1)); // measure of the staircase point
                CHECK(delta_infty_of(triv[j]) ==
                      eta_z * detail::canonical_eta_pair(triv[j + 1]));
            }
            auto back = psi_reconstruct(alpha, Zpsi, q.staircase(), lo - 1, triv,
                                        q.below_mode());
            CHECK(back == q);
        }
    }
}

TEST_CASE("base-point change") {
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        BreveElement alpha = rng.breve(2, 3), beta = rng.breve(2, 3);
        auto q = rng.rank2_fn(alpha, 4);
        auto s = rng.rank2_dist(alpha, 3);
        SECTION("identity transport") {
            CHECK(retarget_alpha(q, mu_base(alpha, alpha)) == q);
        }
        MeasureElement h{alpha, beta, rng.unit_scalar()};
        auto q2 = retarget_alpha(q, h);
        CHECK(q2.alpha() == beta);
        CHECK(retarget_alpha(q2, mu_inverse(h)) == q);
        // the pairing is invariant under opposite transports
        MeasureElement hs{beta, alpha, h.c.inverse()};
        auto s2 = retarget_alpha(s, hs);
        CHECK(pair_rank2(q2, s2) == pair_rank2(q, s));
        CHECK_THROWS_AS(retarget_alpha(q, MeasureElement{alpha, beta, Scalar(0)}),
                        DivisionByZero);
    }
}

TEST_CASE("equality is semantic") {
    // widening the window does not change the element
    auto q = RankTwoFunction::delta_staircase(Staircase(1, -1), a0, r_pow(2));
    auto wide = RankTwoFunction::from_normalized(a0, Staircase(1, -1), -3,
                                                 q.materialized(-3, 3), BelowMode::Staircase);
    CHECK(wide == q);
    // a zero lower tail equals an explicitly zero lower mode
    Rng rng(23);
    auto f = delta_geq(0, 0) - delta_geq(0, 1).scaled(r_pow(1));
    auto qz = RankTwoFunction::from_normalized(a0, Staircase::standard(), 0, {f},
                                               BelowMode::Zero);
    auto qs = RankTwoFunction::from_normalized(a0, Staircase::standard(), 0, {f},
                                               BelowMode::Staircase);
    CHECK(qz == qs); // the staircase coefficient below is forced to zero
}
