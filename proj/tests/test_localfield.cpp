#include <catch2/catch_amalgamated.hpp>

#include "rk2/localfield.hpp"
#include "rk2/verify.hpp"

using namespace rk2;

TEST_CASE("Laurent vectors") {
    LaurentF x = LaurentF::monomial(3, 3, -1, 2);
    CHECK(x.valuation() == -1);
    CHECK(LaurentF(3, 3).valuation() == 3); // zero vector sentinel
    LaurentF y = LaurentF::monomial(3, 3, 0, 1);
    CHECK(LaurentF::res_pair(x, y, 0) == 2); // coefficient of u^{-1} in 2u^{-1}
    CHECK(LaurentF::res_pair(x, y, 1) == 0); // coefficient of u^{-2}
    CHECK(LaurentF::res_pair(x, LaurentF::monomial(3, 3, 1, 2), -1) == 1); // 4 mod 3
    CHECK_THROWS_AS(LaurentF::monomial(3, 3, 5), WindowError);
}

TEST_CASE("integration") {
    SECTION("normalization: the valuation ring has mass one") {
        auto f = FiniteFunction::ideal_indicator(2, 3, -2, 2, 0);
        CHECK(haar_integral(f).rational_part() == Rational(1));
    }
    SECTION("unit shells") {
        // mass of the unit shell at level 0 is 1 - 1/p
        for (int p : {2, 3}) {
            auto f0 = FiniteFunction::ideal_indicator(p, 3, -2, 2, 0);
            auto f1 = FiniteFunction::ideal_indicator(p, 3, -2, 2, 1).scaled(
                CyclotomicScalar::from_rational(p, -1));
            CHECK(haar_integral(f0 + f1).rational_part() ==
                  Rational(1) - Rational(1, p));
        }
    }
    SECTION("ideal masses") {
        for (int n = -2; n <= 2; ++n) {
            auto f = FiniteFunction::ideal_indicator(2, 3, -2, 3, n);
            Rational expect(1);
            for (int i = 0; i < n; ++i) expect /= 2;
            for (int i = 0; i > n; --i) expect *= 2;
            CHECK(haar_integral(f).rational_part() == expect);
        }
    }
    SECTION("window overflow is loud") {
        CHECK_THROWS_AS(FiniteFunction(2, 3, -4, 0), WindowError);
    }
}

TEST_CASE("restriction and averaging maps") {
    int p = 3, M = 3;
    SECTION("ideal indicators restrict to based indicators") {
        for (int n = -2; n <= 2; ++n) {
            auto f = FiniteFunction::ideal_indicator(p, M, -M, M, n);
            auto one = CyclotomicScalar::from_rational(p, 1);
            auto expect = FnZ<CyclotomicScalar>::delta_geq(0, n, one);
            CHECK(i_map(f) == expect);
            CHECK(j_map(f) == expect);
        }
    }
    SECTION("restriction requires invariance") {
        FiniteFunction f(p, M, 0, 2);
        f.set_value(1, CyclotomicScalar::from_rational(p, 1)); // a single coset
        CHECK_THROWS_AS(i_map(f), ValidationError);
        CHECK_NOTHROW(j_map(f)); // averaging is total
    }
    SECTION("restriction does not depend on the choice of the parameter") {
        // u' = u * unit indexes the same shells, so invariant functions
        // restrict identically along the powers of either parameter
        FiniteFunction f = FiniteFunction::ideal_indicator(p, M, -1, 2, 0);
        LaurentF uprime(p, M);
        uprime.set(1, 1);
        uprime.set(2, p - 1); // u + (p-1)u^2 = u * unit
        for (int n = 0; n < 2; ++n) {
            // n-th power of u' truncated to the window
            LaurentF pw = LaurentF::monomial(p, M, 0);
            for (int i = 0; i < n; ++i) pw = pw.mul_truncated(uprime, 2);
            CHECK(f.value_at(pw) == f.value_at(LaurentF::monomial(p, M, n)));
        }
    }
    SECTION("restriction hits every window-representable discrete function") {
        // build the invariant function with prescribed level values and read
        // them back
        std::vector<Rational> levels = {Rational(2), Rational(0), Rational(-1, 3),
                                        Rational(5)};
        FiniteFunction f(p, M, -1, 2);
        for (std::size_t i = 0; i < f.size(); ++i) {
            LaurentF x = f.rep(i);
            int v = x.is_zero() ? 2 : x.valuation();
            f.set_value(i, CyclotomicScalar::from_rational(p, levels[std::size_t(v + 1)]));
        }
        auto disc = i_map(f);
        for (int v = -1; v < 2; ++v)
            CHECK(disc.at(v) ==
                  CyclotomicScalar::from_rational(p, levels[std::size_t(v + 1)]));
        CHECK(disc.tail() == CyclotomicScalar::from_rational(p, levels[3]));
        CHECK(i_map(f) == j_map(f));
    }
    SECTION("averaging kills unit-orbit differences") {
        FiniteFunction f(p, M, -1, 2);
        for (std::size_t i = 0; i < f.size(); ++i)
            f.set_value(i, CyclotomicScalar::from_rational(p, Rational(int(i % 7) - 3)));
        LaurentF unit = LaurentF::monomial(p, M, 0, 2);
        unit.set(1, 1);
        auto diff = f + f.unit_translate(unit).scaled(CyclotomicScalar::from_rational(p, -1));
        CHECK(j_map(diff).is_zero());
    }
}

TEST_CASE("local transform") {
    SECTION("self-dual indicator at the standard form") {
        auto f = FiniteFunction::ideal_indicator(2, 2, -2, 2, 0);
        auto out = fourier_local(f, 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            LaurentF x = out.rep(i);
            bool inside = x.is_zero() || x.valuation() >= 0;
            CHECK(out.value(i) ==
                  CyclotomicScalar::from_rational(2, inside ? 1 : 0));
        }
    }
    SECTION("ideal indicators transform with mass and dual support") {
        for (int p : {2, 3})
            for (int n : {-1, 0, 1})
                for (int w : {-1, 0, 1}) {
                    int MM = 4;
                    auto f = FiniteFunction::ideal_indicator(p, MM, n, n + 2, n);
                    auto out = fourier_local(f, w);
                    Rational mass(1);
                    for (int i = 0; i < n; ++i) mass /= p;
                    for (int i = 0; i > n; --i) mass *= p;
                    auto expect = FiniteFunction::ideal_indicator(p, MM, out.lower(),
                                                                  out.upper(), -n - w)
                                      .scaled(CyclotomicScalar::from_rational(p, mass));
                    CHECK(out == expect);
                }
    }
    SECTION("window overflow is loud") {
        auto f = FiniteFunction::ideal_indicator(2, 2, -2, 2, 0);
        CHECK_THROWS_AS(fourier_local(f, 3), WindowError);
    }
}

TEST_CASE("descended distributions") {
    for (int p : {2, 3}) {
        auto d0 = dist_images(DistKind::Delta0, p, 3);
        for (int x = -2; x <= 2; ++x) CHECK(d0.at(x) == Scalar(1));
        auto haar = dist_images(DistKind::Haar, p, 3);
        auto expect = detail::dist_eval_at(dist_g_r(0), Rational(p));
        CHECK(haar == expect);
    }
}

TEST_CASE("bridge suite passes") {
    Report rep = verify_oracle_bridge();
    for (const auto& c : rep.checks) {
        INFO(c.name);
        CHECK(c.passed);
    }
}
