#include <catch2/catch_amalgamated.hpp>

#include "rk2/heisenberg.hpp"
#include "rk2/rng.hpp"

using namespace rk2;

namespace {
const BreveElement a0 = BreveElement::column(0);
}

TEST_CASE("three-parameter group law through the coordinate isomorphism") {
    SECTION("identity") {
        CHECK(heis_iso(0, 0, 0) == tilde_identity(a0));
    }
    SECTION("the generating relation") {
        auto x = heis_iso(1, 0, 0), y = heis_iso(0, 1, 0);
        CHECK(heis_iso_inv(tilde_mul(x, y)) == HeisTriple{1, 1, 1});
    }
    SECTION("homomorphism on random pairs") {
        Rng rng(3);
        for (int i = 0; i < 100; ++i) {
            std::int64_t a1 = rng.range(-4, 4), b1 = rng.range(-4, 4), c1 = rng.range(-4, 4);
            std::int64_t a2 = rng.range(-4, 4), b2 = rng.range(-4, 4), c2 = rng.range(-4, 4);
            auto prod = tilde_mul(heis_iso(a1, b1, c1), heis_iso(a2, b2, c2));
            CHECK(heis_iso_inv(prod) ==
                  HeisTriple{a1 + a2, b1 + b2, c1 + c2 + a1 * b2});
        }
    }
    SECTION("commutator of the two generators is central with unit offset") {
        auto x = heis_iso(1, 0, 0), y = heis_iso(0, 1, 0);
        auto comm = tilde_mul(tilde_mul(x, y), tilde_mul(tilde_inverse(x), tilde_inverse(y)));
        CHECK(heis_iso_inv(comm) == HeisTriple{0, 0, 1});
        auto z = heis_iso(0, 0, 1);
        CHECK(tilde_mul(z, x) == tilde_mul(x, z));
        CHECK(tilde_mul(z, y) == tilde_mul(y, z));
    }
}

TEST_CASE("quadruple group law") {
    CHECK(quad_mul({1, 0, 0, 0}, {0, 1, 0, 0}) == HeisQuad{1, 1, 1, 0});
    CHECK(quad_commutator({0, 0, 0, 1}, {0, 1, 0, 0}) == HeisQuad{1, 0, -1, 0});
    for (std::int64_t a = -3; a <= 3; ++a)
        for (std::int64_t b = -3; b <= 3; ++b)
            for (std::int64_t c : {-2L, 0L, 1L})
                CHECK(quad_commutator({a, 0, c, 0}, {0, b, 0, 0}) == HeisQuad{0, 0, a * b, 0});
    SECTION("inverses") {
        Rng rng(5);
        for (int i = 0; i < 50; ++i) {
            HeisQuad x = rng.quad(5);
            CHECK(quad_mul(x, quad_inverse(x)) == HeisQuad{});
            CHECK(quad_mul(quad_inverse(x), x) == HeisQuad{});
        }
    }
}

TEST_CASE("matrix model") {
    CHECK(matrix_rep(HeisQuad{}) ==
          std::array<std::array<std::int64_t, 4>, 4>{
              {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
    CHECK(matrix_rep(HeisQuad{0, 2, 0, 0})[1][3] == 1); // b(b-1)/2 at b = 2
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        HeisQuad x = rng.quad(6), y = rng.quad(6);
        CHECK(matrix_mul(matrix_rep(x), matrix_rep(y)) == matrix_rep(quad_mul(x, y)));
        CHECK((matrix_rep(x) == matrix_rep(y)) == (x == y)); // faithful on samples
    }
}

TEST_CASE("section change") {
    CHECK(phi_k(1, HeisQuad{0, 2, 0, 0}) == HeisQuad{2, 2, 1, 0});
    CHECK(phi_k(0, HeisQuad{3, -1, 2, 4}) == HeisQuad{3, -1, 2, 4});
    Rng rng(9);
    for (int i = 0; i < 60; ++i) {
        HeisQuad x = rng.quad(5);
        std::int64_t k = rng.range(-4, 4);
        CHECK(phi_k(-k, phi_k(k, x)) == x);
        // the section change is an automorphism
        HeisQuad y = rng.quad(5);
        CHECK(phi_k(k, quad_mul(x, y)) == quad_mul(phi_k(k, x), phi_k(k, y)));
    }
}

TEST_CASE("rotation automorphism") {
    SECTION("coordinates transform by the documented affine rule") {
        for (std::int64_t a : {-2L, 0L, 1L})
            for (std::int64_t b : {-2L, 0L, 3L})
                for (std::int64_t c : {-1L, 2L})
                    for (std::int64_t m : {-2L, 1L}) {
                        auto moved = c_act_tilde(m, heis_iso(a, b, c));
                        CHECK(heis_iso_inv(moved) ==
                              HeisTriple{a + m * b, b, c + b * (b - 1) / 2 * m});
                    }
    }
    SECTION("composition of rotations") {
        Rng rng(11);
        for (int i = 0; i < 40; ++i) {
            BreveElement alpha = rng.breve(3, 3);
            HeisTilde x = rng.tilde(alpha, 3);
            std::int64_t m = rng.range(-3, 3), k = rng.range(-3, 3);
            CHECK(c_act_tilde(k, c_act_tilde(m, x)) == c_act_tilde(k + m, x));
            CHECK(c_act_tilde(0, x) == x);
        }
    }
}

TEST_CASE("extended group") {
    Rng rng(13);
    SECTION("agreement with the quadruple law") {
        for (int i = 0; i < 120; ++i) {
            HeisQuad x = rng.quad(4), y = rng.quad(4);
            CHECK(quad_from_ext(ext_mul(ext_from_quad(x), ext_from_quad(y))) ==
                  quad_mul(x, y));
        }
    }
    SECTION("identity and inverses at random base points") {
        for (int i = 0; i < 40; ++i) {
            BreveElement alpha = rng.breve(3, 3);
            HeisExt x = rng.ext(alpha, 3);
            CHECK(ext_mul(x, ext_identity(alpha)) == x);
            CHECK(ext_mul(x, ext_inverse(x)) == ext_identity(alpha));
        }
    }
    SECTION("central quadruples commute") {
        for (int i = 0; i < 40; ++i) {
            HeisQuad z{0, 0, rng.range(-5, 5), 0};
            HeisQuad x = rng.quad(5);
            CHECK(quad_mul(z, x) == quad_mul(x, z));
        }
    }
}

TEST_CASE("base-point transport is choice-free and functorial") {
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        BreveElement a1 = rng.breve(3, 3), a2 = rng.breve(3, 3);
        HeisTilde x = rng.tilde(a1, 3);
        CHECK(lambda_transport(x, a2, rng.range(-5, 5)) == lambda_transport(x, a2, 0));
        CHECK(lambda_transport(lambda_transport(x, a2), a1) == x);
    }
}

TEST_CASE("actions on the spaces") {
    Rng rng(19);
    SECTION("group action property and validity") {
        for (int i = 0; i < 20; ++i) {
            BreveElement alpha = rng.breve(3, 3);
            auto q = rng.rank2_fn(alpha, 4);
            auto s = rng.rank2_dist(alpha, 3);
            HeisTilde g1 = rng.tilde(alpha, 3), g2 = rng.tilde(alpha, 3);
            CHECK(act_tilde(g1, act_tilde(g2, q)) == act_tilde(tilde_mul(g1, g2), q));
            CHECK(act_tilde(g1, act_tilde(g2, s)) == act_tilde(tilde_mul(g1, g2), s));
            HeisExt e1 = rng.ext(alpha, 2), e2 = rng.ext(alpha, 2);
            CHECK(act_ext(e1, act_ext(e2, q)) == act_ext(ext_mul(e1, e2), q));
            CHECK(act_ext(e1, act_ext(e2, s)) == act_ext(ext_mul(e1, e2), s));
        }
    }
    SECTION("central elements scale the two sides oppositely") {
        auto q = RankTwoFunction::delta_staircase(Staircase::standard(), a0);
        auto s = delta_gamma(BreveElement::at(0, 0), mu_base(a0, BreveElement::at(0, 0)), a0);
        HeisTilde central = tilde_make(a0, GammaElement{0, 0}, 1);
        auto q2 = act_tilde(central, q);
        auto s2 = act_tilde(central, s);
        CHECK(q2 == q.scaled(r_pow(-1)));
        CHECK(s2 == s.scaled(r_pow(1)));
        CHECK(pair_rank2(q2, s2) == pair_rank2(q, s));
    }
    SECTION("translating the standard characteristic element") {
        Rng rng2(23);
        for (int i = 0; i < 15; ++i) {
            GammaElement beta = rng2.gamma(3);
            HeisTilde g = tilde_make(a0, beta, rng2.range(-2, 2));
            auto q = RankTwoFunction::delta_staircase(Staircase::standard(), a0);
            auto img = act_tilde(g, q);
            CHECK(img.staircase() == Staircase::standard().translated(beta));
            CHECK(img == RankTwoFunction::delta_staircase(
                             Staircase::standard().translated(beta), a0,
                             r_pow(gamma_offset(beta, BreveElement::column(1), a0) - g.h.t +
                                   RankTwoFunction::tz(Staircase::standard(), a0, 0) -
                                   RankTwoFunction::tz(Staircase::standard().translated(beta),
                                                       a0, beta.n))));
        }
    }
    SECTION("rotation action transport is choice-independent") {
        for (int i = 0; i < 15; ++i) {
            BreveElement alpha = rng.breve(2, 3);
            auto q = rng.rank2_fn(alpha, 3);
            auto s = rng.rank2_dist(alpha, 2);
            std::int64_t m = rng.range(-2, 2);
            CHECK(c_act_space(m, q, rng.unit_scalar()) == c_act_space(m, q));
            CHECK(c_act_space(m, s, rng.unit_scalar()) == c_act_space(m, s));
        }
    }
}

TEST_CASE("reflection isomorphisms of the groups") {
    Rng rng(29);
    for (int i = 0; i < 40; ++i) {
        GammaElement g = rng.gamma(3);
        BreveElement alpha = rng.breve(3, 3);
        HeisTilde x = rng.tilde(alpha, 3), y = rng.tilde(alpha, 3);
        CHECK(rho_iso(tilde_identity(alpha), g) == tilde_identity(perp(alpha, g)));
        CHECK(rho_iso(tilde_mul(x, y), g) == tilde_mul(rho_iso(x, g), rho_iso(y, g)));
        GammaElement gv{0, rng.range(-3, 3)};
        HeisExt ex = rng.ext(alpha, 2), ey = rng.ext(alpha, 2);
        CHECK(varrho_iso(ext_mul(ex, ey), gv) ==
              ext_mul(varrho_iso(ex, gv), varrho_iso(ey, gv)));
        CHECK_THROWS_AS(varrho_iso(ex, GammaElement{1, 0}), MismatchError);
    }
}
