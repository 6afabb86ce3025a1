#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rk2/fourier.hpp"
#include "rk2/json_io.hpp"
#include "rk2/localfield.hpp"
#include "rk2/rng.hpp"

namespace rk2 {

struct Check {
    std::string name;
    bool passed = false;
    json witness; // counterexample data when failed
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    void add(const std::string& name, bool ok, json witness = nullptr) {
        checks.push_back({name, ok, ok ? json(nullptr) : std::move(witness)});
    }

    void merge(const Report& other) {
        for (const auto& c : other.checks) {
            Check copy = c;
            copy.name = other.suite + "/" + copy.name;
            checks.push_back(std::move(copy));
        }
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& c : checks) {
            json e{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
            if (!c.passed) e["witness"] = c.witness;
            arr.push_back(e);
        }
        return json{{"suite", suite}, {"passed", all_passed()}, {"checks", arr}};
    }
};

namespace detail {

inline std::vector<BreveElement> breve_grid(std::int64_t N, std::int64_t P) {
    std::vector<BreveElement> out;
    for (std::int64_t n = -N; n <= N; ++n) {
        out.push_back(BreveElement::column(n));
        for (std::int64_t p = -P; p <= P; ++p) out.push_back(BreveElement::at(n, p));
    }
    return out;
}

/// Evaluation of a symbolic rank-1 distribution at r = q (exact).
inline DistZ<Scalar> dist_eval_at(const DistZ<Scalar>& d, const Rational& q) {
    auto ev = [&](const Scalar& s) { return Scalar(s.eval_at(q)); };
    std::vector<Scalar> mid;
    for (const auto& v : d.mid()) mid.push_back(ev(v));
    return DistZ<Scalar>(d.fiber(), Scalar(q), d.xlo(), d.xhi(), ev(d.lo_const()),
                         ev(d.lo_geom()), std::move(mid), ev(d.hi_const()), ev(d.hi_geom()));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Torsor suite: closed forms against the literal counting oracle.
// ---------------------------------------------------------------------------

inline Report verify_torsor_oracle(std::uint64_t /*seed*/ = 1, int /*size*/ = 0) {
    Report rep{"torsor-oracle", {}};
    auto grid = detail::breve_grid(2, 2);

    bool ok = true;
    json wit;
    // composition: split reference sets over a middle endpoint
    for (auto& a : grid)
        for (auto& b : grid)
            for (auto& c : grid) {
                if (!(a >= b && b >= c)) continue;
                auto d_ab = count_oracle(set_from_staircase(Staircase::standard(), a, b), a, b);
                auto d_bc = count_oracle(set_from_staircase(Staircase::standard(), b, c), b, c);
                auto d_ac = count_oracle(set_from_staircase(Staircase::standard(), a, c), a, c);
                if (d_ab + d_bc != d_ac) {
                    ok = false;
                    wit = json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"gamma", to_json(c)}};
                }
            }
    rep.add("compose-disjoint-union", ok, wit);

    ok = true;
    wit = nullptr;
    for (auto& a : grid)
        for (auto& b : grid) {
            if (!(a >= b)) continue;
            for (std::int64_t bn : {-1, 0, 2})
                for (std::int64_t bp : {-2, 0, 3}) {
                    GammaElement g{bn, bp};
                    std::int64_t closed = gamma_offset(g, a, b);
                    std::int64_t lit = -count_oracle(
                        set_from_staircase(Staircase::standard().translated(g), circ(g, a),
                                           circ(g, b)),
                        circ(g, a), circ(g, b));
                    if (closed != lit) {
                        ok = false;
                        wit = json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"g", to_json(g)}};
                    }
                }
        }
    rep.add("translation-offset-vs-counting", ok, wit);

    ok = true;
    wit = nullptr;
    for (auto& a : grid)
        for (auto& b : grid) {
            if (!(a >= b)) continue;
            for (std::int64_t m : {-2, -1, 1, 3}) {
                std::int64_t closed = c_offset(m, a, b);
                std::int64_t lit =
                    -count_oracle(set_from_staircase(Staircase::standard().sheared(m),
                                                     shear(m, a), shear(m, b)),
                                  shear(m, a), shear(m, b));
                if (closed != lit) {
                    ok = false;
                    wit = json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"m", m}};
                }
            }
        }
    rep.add("rotation-offset-vs-counting", ok, wit);

    ok = true;
    wit = nullptr;
    for (std::int64_t n1 = -8; n1 <= 8 && ok; ++n1)
        for (std::int64_t n2 = -8; n2 <= 8; ++n2) {
            if (std::abs(n1 - n2) > 8) continue;
            for (std::int64_t m = -4; m <= 4; ++m) {
                TorsorElement h{BreveElement::column(n1), BreveElement::column(n2), 0};
                if (c_act_torsor(m, h).t != m * (n1 + n2 - 1) * (n1 - n2) / 2) {
                    ok = false;
                    wit = json{{"n1", n1}, {"n2", n2}, {"m", m}};
                }
            }
        }
    rep.add("rotation-closed-form", ok, wit);

    ok = true;
    wit = nullptr;
    for (auto& a : grid)
        for (auto& b : grid) {
            if (!(a >= b)) continue;
            for (std::int64_t gn : {-1, 0, 1})
                for (std::int64_t gp : {-1, 0, 2}) {
                    GammaElement g{gn, gp};
                    // literal reflected complement
                    rk2::detail::Region src(a, b);
                    BreveElement a1 = perp(b, g), b1 = perp(a, g);
                    SetDesc Ap;
                    rk2::detail::Region dst(a1, b1);
                    for (std::int64_t mm = dst.n_min(); mm <= dst.n_max(); ++mm) {
                        if (dst.column(mm).empty()) continue;
                        auto cr = src.column(-g.n - mm);
                        Ap[mm].start = 1 - g.p - std::max<std::int64_t>(cr.lo, 0);
                    }
                    std::int64_t lit = count_oracle(Ap, a1, b1);
                    if (perp_offset(a, b, g) != lit) {
                        ok = false;
                        wit = json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"g", to_json(g)}};
                    }
                    TorsorElement h{a, b, 3};
                    if (perp_torsor(perp_torsor(h, g), g) != h) {
                        ok = false;
                        wit = json{{"involution", to_json(h)}};
                    }
                }
        }
    rep.add("reflection-offset-vs-counting", ok, wit);

    return rep;
}

// ---------------------------------------------------------------------------
// Heisenberg suite.
// ---------------------------------------------------------------------------

inline Report verify_heisenberg_laws(std::uint64_t seed = 1, int size = 500) {
    Report rep{"heisenberg-laws", {}};
    Rng rng(seed);

    bool ok = true;
    json wit;
    for (int i = 0; i < size; ++i) {
        HeisQuad x = rng.quad(5), y = rng.quad(5);
        HeisQuad viaext = quad_from_ext(ext_mul(ext_from_quad(x), ext_from_quad(y)));
        if (viaext != quad_mul(x, y)) {
            ok = false;
            wit = json{{"x", to_json(x)}, {"y", to_json(y)}};
            break;
        }
    }
    rep.add("quadruple-vs-abstract-composition", ok, wit);

    ok = true;
    wit = nullptr;
    for (int i = 0; i < size; ++i) {
        HeisQuad x = rng.quad(6), y = rng.quad(6);
        if (matrix_mul(matrix_rep(x), matrix_rep(y)) != matrix_rep(quad_mul(x, y))) {
            ok = false;
            wit = json{{"x", to_json(x)}, {"y", to_json(y)}};
            break;
        }
    }
    rep.add("matrix-homomorphism", ok, wit);

    ok = true;
    wit = nullptr;
    for (std::int64_t m = -5; m <= 5; ++m)
        for (std::int64_t b = -5; b <= 5; ++b) {
            HeisQuad lhs = quad_commutator({0, 0, 0, m}, {0, b, 0, 0});
            HeisQuad expect{m * b, 0, -m * b * (b + 1) / 2, 0};
            if (lhs != expect) {
                ok = false;
                wit = json{{"m", m}, {"b", b}, {"got", to_json(lhs)}};
            }
        }
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t c = -5; c <= 5; ++c)
            for (std::int64_t b = -5; b <= 5; ++b) {
                HeisQuad lhs = quad_commutator({a, 0, c, 0}, {0, b, 0, 0});
                if (lhs != HeisQuad{0, 0, a * b, 0}) {
                    ok = false;
                    wit = json{{"a", a}, {"b", b}, {"c", c}};
                }
            }
    rep.add("commutator-identities", ok, wit);

    // center on the box: an element commutes with the generators iff it is
    // a pure central parameter
    ok = true;
    wit = nullptr;
    std::vector<HeisQuad> gens = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t b = -5; b <= 5; ++b)
            for (std::int64_t c = -5; c <= 5; ++c)
                for (std::int64_t m = -5; m <= 5; ++m) {
                    HeisQuad x{a, b, c, m};
                    bool commutes = true;
                    for (auto& g : gens)
                        if (quad_mul(x, g) != quad_mul(g, x)) commutes = false;
                    if (commutes != (a == 0 && b == 0 && m == 0)) {
                        ok = false;
                        wit = to_json(x);
                    }
                }
    rep.add("center", ok, wit);

    // lower central series: triple commutators are central, and generate
    // every central element on a small box
    ok = true;
    wit = nullptr;
    for (int i = 0; i < size; ++i) {
        HeisQuad x = rng.quad(3), y = rng.quad(3), z = rng.quad(3);
        HeisQuad t = quad_commutator(quad_commutator(x, y), z);
        if (t.a != 0 || t.b != 0 || t.m != 0) {
            ok = false;
            wit = json{{"x", to_json(x)}, {"y", to_json(y)}, {"z", to_json(z)}};
        }
    }
    // z^c as a product of triple commutators for |c| <= 10
    {
        HeisQuad plus = quad_commutator(quad_commutator({0, 0, 0, 1}, {0, 1, 0, 0}),
                                        {0, 1, 0, 0});
        HeisQuad minus = quad_commutator(quad_commutator({0, 0, 0, 1}, {0, 1, 0, 0}),
                                         {0, -1, 0, 0});
        if (plus != HeisQuad{0, 0, 1, 0} || minus != HeisQuad{0, 0, -1, 0}) ok = false;
        for (std::int64_t c = -10; c <= 10; ++c) {
            HeisQuad acc{};
            for (std::int64_t i = 0; i < std::abs(c); ++i)
                acc = quad_mul(acc, c > 0 ? plus : minus);
            if (acc != HeisQuad{0, 0, c, 0}) {
                ok = false;
                wit = json{{"c", c}};
            }
        }
    }
    rep.add("lower-central-series", ok, wit);

    // abstract group laws at random base points
    ok = true;
    wit = nullptr;
    for (int i = 0; i < size / 5; ++i) {
        BreveElement alpha = rng.breve(3, 3);
        HeisTilde x = rng.tilde(alpha, 3), y = rng.tilde(alpha, 3), z = rng.tilde(alpha, 3);
        if (tilde_mul(tilde_mul(x, y), z) != tilde_mul(x, tilde_mul(y, z))) ok = false;
        if (tilde_mul(x, tilde_inverse(x)) != tilde_identity(alpha)) ok = false;
        if (tilde_mul(tilde_identity(alpha), x) != x) ok = false;
        HeisExt ex = rng.ext(alpha, 3), ey = rng.ext(alpha, 3), ez = rng.ext(alpha, 3);
        if (ext_mul(ext_mul(ex, ey), ez) != ext_mul(ex, ext_mul(ey, ez))) ok = false;
        if (ext_mul(ex, ext_inverse(ex)) != ext_identity(alpha)) ok = false;
        if (!ok) {
            wit = json{{"alpha", to_json(alpha)}};
            break;
        }
    }
    rep.add("group-axioms", ok, wit);

    // transport between base points: independence of the choice and the
    // commuting square with the rotation
    ok = true;
    wit = nullptr;
    for (int i = 0; i < size / 10; ++i) {
        BreveElement a1 = rng.breve(3, 3), a2 = rng.breve(3, 3);
        HeisTilde x = rng.tilde(a1, 3), y = rng.tilde(a1, 3);
        std::int64_t g1 = rng.range(-4, 4), g2 = rng.range(-4, 4);
        if (lambda_transport(x, a2, g1) != lambda_transport(x, a2, g2)) ok = false;
        if (lambda_transport(tilde_mul(x, y), a2) !=
            tilde_mul(lambda_transport(x, a2), lambda_transport(y, a2)))
            ok = false;
        std::int64_t m = rng.range(-3, 3);
        // square: transport then rotation equals rotation then transport
        HeisTilde lhs = c_act_tilde(m, lambda_transport(x, a2));
        HeisTilde rhs = lambda_transport(c_act_tilde(m, x), a2);
        if (lhs != rhs) ok = false;
        if (!ok) {
            wit = json{{"a1", to_json(a1)}, {"a2", to_json(a2)}};
            break;
        }
    }
    rep.add("base-point-transport", ok, wit);

    // rotation acts on coordinates as the section shear
    ok = true;
    wit = nullptr;
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t b = -2; b <= 2; ++b)
            for (std::int64_t c = -2; c <= 2; ++c)
                for (std::int64_t m = -2; m <= 2; ++m) {
                    HeisTilde moved = c_act_tilde(m, heis_iso(a, b, c));
                    HeisTriple t = heis_iso_inv(moved);
                    if (t != HeisTriple{a + m * b, b, c + b * (b - 1) / 2 * m}) {
                        ok = false;
                        wit = json{{"a", a}, {"b", b}, {"c", c}, {"m", m}};
                    }
                    HeisQuad q{a, b, c, 0};
                    if (phi_k(m, q) != HeisQuad{a + m * b, b, c + b * (b - 1) / 2 * m, 0})
                        ok = false;
                    if (phi_k(-m, phi_k(m, q)) != q) ok = false;
                }
    rep.add("rotation-on-coordinates", ok, wit);

    return rep;
}

// ---------------------------------------------------------------------------
// Fourier suites.
// ---------------------------------------------------------------------------

inline Report verify_fiber_identities(std::uint64_t /*seed*/ = 1, int /*size*/ = 0) {
    Report rep{"fiber-identities", {}};
    bool ok_di = true, ok_inv = true, ok_id = true, ok_conj = true;
    json wit_di, wit_inv, wit_id, wit_conj;
    std::vector<Scalar> coefs = {Scalar(1), Scalar(3), r_pow(2),
                                 Scalar(Rational(1, 2)) * r_pow(-1)};
    for (std::int64_t k : {-2, 0, 1})
        for (std::int64_t gn : {-1, 0, 2})
            for (std::int64_t gp : {-1, 0, 1, 3})
                for (const auto& c : coefs) {
                    GammaElement g{gn, gp};
                    MeasureElement eta{BreveElement::column(k + 1), BreveElement::column(k), c};
                    std::int64_t kdual = -k - g.n;
                    // transform of the point-mass image is the measure
                    auto img = fourier_fiber_dist(dist_delta_plus_infinity(kdual), g, eta);
                    if (img != dist_eta(k, c)) {
                        ok_di = false;
                        wit_di = json{{"k", k}, {"g", to_json(g)}, {"c", to_json(c)}};
                    }
                    // transform of the inverse measure is the point-mass image
                    MeasureElement etainv = eta_inverse_perp(eta, g);
                    auto img2 = fourier_fiber_dist(dist_eta(kdual, etainv.c), g, eta);
                    if (img2 != dist_delta_plus_infinity(k)) {
                        ok_inv = false;
                        wit_inv = json{{"k", k}, {"g", to_json(g)}, {"c", to_json(c)}};
                    }
                    // two-sided inversion on functions and distributions
                    auto f = delta_geq(k, 2) + delta_geq(k, -1).scaled(r_pow(1));
                    auto ff = fourier_fiber_fn(fourier_fiber_fn(f, g, eta), g, etainv);
                    if (ff != f) {
                        ok_id = false;
                        wit_id = json{{"k", k}, {"g", to_json(g)}};
                    }
                    auto d = dist_g_r(kdual) +
                             RankOneDistribution::spike(kdual, Scalar::r(), 1, Scalar(2));
                    auto dd = fourier_fiber_dist(fourier_fiber_dist(d, g, eta), g, etainv);
                    if (dd != d) {
                        ok_id = false;
                        wit_id = json{{"k", k}, {"g", to_json(g)}, {"dist", true}};
                    }
                    // conjugacy of the two fiber transforms
                    auto lhs = pair_rank1(fourier_fiber_fn(f, g, eta), d);
                    auto rhs = pair_rank1(f, fourier_fiber_dist(d, g, eta));
                    if (lhs != rhs) {
                        ok_conj = false;
                        wit_conj = json{{"k", k}, {"g", to_json(g)}};
                    }
                }
    rep.add("point-mass-to-measure", ok_di, wit_di);
    rep.add("inverse-measure-to-point-mass", ok_inv, wit_inv);
    rep.add("two-sided-inverse", ok_id, wit_id);
    rep.add("fiber-conjugacy", ok_conj, wit_conj);
    return rep;
}

inline Report verify_fourier_involution(std::uint64_t seed = 1, int size = 200) {
    Report rep{"fourier-involution", {}};
    Rng rng(seed);
    bool ok_fn = true, ok_dist = true, ok_valid = true;
    json wit_fn, wit_dist, wit_valid;
    for (int i = 0; i < size; ++i) {
        GammaElement g = rng.gamma(3);
        BreveElement alpha = rng.breve(3, 4);
        RankTwoFunction q = rng.rank2_fn(alpha, 5);
        RankTwoFunction out = q;
        try {
            out = fourier_rank2_fn(fourier_rank2_fn(q, g), g);
        } catch (const Error& e) {
            ok_valid = false;
            wit_valid = json{{"error", e.what()}, {"g", to_json(g)}};
            continue;
        }
        if (out != q) {
            ok_fn = false;
            wit_fn = json{{"g", to_json(g)}, {"q", to_json(q)}};
        }
        RankTwoDistribution s = rng.rank2_dist(alpha, 3);
        if (fourier_rank2_dist(fourier_rank2_dist(s, g), g) != s) {
            ok_dist = false;
            wit_dist = json{{"g", to_json(g)}, {"s", to_json(s)}};
        }
    }
    rep.add("involution-on-functions", ok_fn, wit_fn);
    rep.add("involution-on-distributions", ok_dist, wit_dist);
    rep.add("transform-outputs-validate", ok_valid, wit_valid);
    return rep;
}

inline Report verify_fourier_conjugacy(std::uint64_t seed = 1, int size = 200) {
    Report rep{"fourier-conjugacy", {}};
    Rng rng(seed);
    bool ok = true;
    json wit;
    for (int i = 0; i < size; ++i) {
        GammaElement g = rng.gamma(3);
        BreveElement alpha = rng.breve(3, 4);
        RankTwoFunction q = rng.rank2_fn(alpha, 4);
        RankTwoDistribution s = rng.rank2_dist(perp(alpha, g), 3);
        Scalar lhs = pair_rank2(fourier_rank2_fn(q, g), s);
        Scalar rhs = pair_rank2(q, fourier_rank2_dist(s, g));
        if (lhs != rhs) {
            ok = false;
            wit = json{{"g", to_json(g)}, {"q", to_json(q)}, {"s", to_json(s)}};
            break;
        }
    }
    rep.add("conjugacy", ok, wit);
    return rep;
}

// ---------------------------------------------------------------------------
// Pairing invariance and equivariance.
// ---------------------------------------------------------------------------

inline Report verify_pairing_invariance(std::uint64_t seed = 1, int size = 200) {
    Report rep{"pairing-invariance", {}};
    Rng rng(seed);
    bool ok_t = true, ok_e = true;
    json wit_t, wit_e;
    for (int i = 0; i < size; ++i) {
        BreveElement alpha = rng.breve(3, 4);
        RankTwoFunction q = rng.rank2_fn(alpha, 4);
        RankTwoDistribution s = rng.rank2_dist(alpha, 3);
        Scalar base = pair_rank2(q, s);
        HeisTilde g = rng.tilde(alpha, 3);
        if (pair_rank2(act_tilde(g, q), act_tilde(g, s)) != base) {
            ok_t = false;
            wit_t = json{{"alpha", to_json(alpha)}, {"i", i}};
        }
        HeisExt ge = rng.ext(alpha, 2);
        if (pair_rank2(act_ext(ge, q), act_ext(ge, s)) != base) {
            ok_e = false;
            wit_e = json{{"alpha", to_json(alpha)}, {"i", i}};
        }
    }
    rep.add("group-invariance", ok_t, wit_t);
    rep.add("extended-group-invariance", ok_e, wit_e);
    return rep;
}

inline Report verify_equivariance(std::uint64_t seed = 1, int size = 100) {
    Report rep{"equivariance", {}};
    Rng rng(seed);
    bool ok_fn = true, ok_dist = true, ok_ext = true;
    json wit_fn, wit_dist, wit_ext;
    for (int i = 0; i < size; ++i) {
        GammaElement g = rng.gamma(3);
        BreveElement alpha = rng.breve(3, 4);
        HeisTilde w = rng.tilde(alpha, 3);
        RankTwoFunction q = rng.rank2_fn(alpha, 4);
        if (fourier_rank2_fn(act_tilde(w, q), g) !=
            act_tilde(rho_iso(w, g), fourier_rank2_fn(q, g))) {
            ok_fn = false;
            wit_fn = json{{"g", to_json(g)}, {"w", to_json(w)}};
        }
        RankTwoDistribution s = rng.rank2_dist(alpha, 3);
        if (fourier_rank2_dist(act_tilde(w, s), g) !=
            act_tilde(rho_iso(w, g), fourier_rank2_dist(s, g))) {
            ok_dist = false;
            wit_dist = json{{"g", to_json(g)}, {"w", to_json(w)}};
        }
        // extended group for vertical gamma
        GammaElement gv{0, rng.range(-3, 3)};
        HeisExt we = rng.ext(alpha, 2);
        if (fourier_rank2_fn(act_ext(we, q), gv) !=
            act_ext(varrho_iso(we, gv), fourier_rank2_fn(q, gv)))
            ok_ext = false;
        if (fourier_rank2_dist(act_ext(we, s), gv) !=
            act_ext(varrho_iso(we, gv), fourier_rank2_dist(s, gv))) {
            ok_ext = false;
            wit_ext = json{{"gv", to_json(gv)}, {"i", i}};
        }
    }
    rep.add("group-equivariance-functions", ok_fn, wit_fn);
    rep.add("group-equivariance-distributions", ok_dist, wit_dist);
    rep.add("extended-group-equivariance", ok_ext, wit_ext);
    // homomorphism property of the reflection isomorphism
    bool ok_rho = true;
    json wit_rho;
    for (int i = 0; i < size; ++i) {
        GammaElement g = rng.gamma(3);
        BreveElement alpha = rng.breve(3, 3);
        HeisTilde x = rng.tilde(alpha, 3), y = rng.tilde(alpha, 3);
        if (rho_iso(tilde_mul(x, y), g) != tilde_mul(rho_iso(x, g), rho_iso(y, g))) {
            ok_rho = false;
            wit_rho = json{{"g", to_json(g)}};
        }
        if (rho_iso(tilde_identity(alpha), g) != tilde_identity(perp(alpha, g))) ok_rho = false;
    }
    rep.add("reflection-homomorphism", ok_rho, wit_rho);
    return rep;
}

// ---------------------------------------------------------------------------
// Normal form and non-degeneracy.
// ---------------------------------------------------------------------------

inline Report verify_normal_form(std::uint64_t seed = 1, int size = 200) {
    Report rep{"normal-form", {}};
    Rng rng(seed);
    bool ok_red = true, ok_zero = true;
    json wit_red, wit_zero;
    for (int i = 0; i < size; ++i) {
        BreveElement alpha = rng.breve(3, 4);
        std::vector<std::pair<std::int64_t, RankOneDistribution>> raw;
        int terms = int(rng.range(1, 3));
        for (int t = 0; t < terms; ++t) {
            std::int64_t k = rng.range(-3, 3);
            raw.emplace_back(k, rng.dist_raw(k));
        }
        RankTwoDistribution base = RankTwoDistribution::reduce_normalized(alpha, raw);
        // add random multiples of the defining relations
        auto noisy = raw;
        for (int t = 0, n = int(rng.range(1, 3)); t < n; ++t) {
            std::int64_t k = rng.range(-4, 3);
            Scalar c = rng.small_scalar();
            noisy.emplace_back(k, dist_delta_plus_infinity(k).scaled(c));
            noisy.emplace_back(k + 1, dist_eta(k + 1, Scalar(0) - c));
        }
        RankTwoDistribution again = RankTwoDistribution::reduce_normalized(alpha, noisy);
        if (again != base) {
            ok_red = false;
            wit_red = json{{"i", i}, {"alpha", to_json(alpha)}};
        }
        // every relation generator pairs to zero with every valid function
        RankTwoFunction q = rng.rank2_fn(alpha, 4);
        std::int64_t k = rng.range(-3, 2);
        Scalar c = rng.unit_scalar();
        Scalar val = pair_rank1(q.slot_product(k), dist_delta_plus_infinity(k).scaled(c)) -
                     pair_rank1(q.slot_product(k + 1), dist_eta(k + 1, c));
        if (!val.is_zero()) {
            ok_zero = false;
            wit_zero = json{{"k", k}, {"alpha", to_json(alpha)}};
        }
    }
    rep.add("reduction-mod-relations", ok_red, wit_red);
    rep.add("relations-pair-to-zero", ok_zero, wit_zero);
    return rep;
}

inline Report verify_nondegeneracy(std::uint64_t /*seed*/ = 1, int /*size*/ = 0) {
    Report rep{"nondegeneracy", {}};
    for (int m = 1; m <= 3; ++m) {
        // Rows: truncated-space elements; columns: slot distributions.
        // Row (k0, x0): indicator based at x0 in slot k0, completed by
        // constant multiples of the zero-based indicator in the other slots
        // so that every interior junction holds.
        std::vector<std::vector<RankOneFunction>> rows;
        std::vector<std::pair<std::int64_t, RankOneDistribution>> cols;
        std::int64_t klo = -m, khi = m - 1;
        for (std::int64_t k0 = klo; k0 <= khi; ++k0)
            for (std::int64_t x0 : {1, 2}) {
                std::vector<RankOneFunction> tuple;
                for (std::int64_t k = klo; k <= khi; ++k) {
                    if (k == k0)
                        tuple.push_back(delta_geq(k, x0));
                    else if (k < k0)
                        tuple.push_back(delta_geq(k, 0).scaled(r_pow(-x0)));
                    else
                        tuple.push_back(delta_geq(k, 0));
                }
                rows.push_back(std::move(tuple));
                cols.emplace_back(k0, RankOneDistribution::spike(k0, Scalar::r(), x0, Scalar(1)));
            }
        {
            std::vector<RankOneFunction> tuple;
            for (std::int64_t k = klo; k <= khi; ++k) tuple.push_back(delta_geq(k, 0));
            rows.push_back(std::move(tuple));
            cols.emplace_back(klo, dist_eta(klo, Scalar(1)));
        }
        // interior junctions of every row hold exactly
        bool junctions = true;
        for (auto& row : rows)
            for (std::size_t i = 0; i + 1 < row.size(); ++i)
                if (delta_infty_of(row[i]) != rk2::detail::canonical_eta_pair(row[i + 1]))
                    junctions = false;
        rep.add("window-" + std::to_string(m) + "-rows-valid", junctions);

        std::size_t n = rows.size();
        std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n, Scalar(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto [k, d] = cols[j];
                mat[i][j] = pair_rank1(rows[i][std::size_t(k - klo)], d);
            }
        // exact Gaussian elimination over the rational-function field
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < n; ++col) {
            std::size_t piv = rank;
            while (piv < n && mat[piv][col].is_zero()) ++piv;
            if (piv == n) continue;
            std::swap(mat[piv], mat[rank]);
            Scalar inv = mat[rank][col].inverse();
            for (std::size_t i = rank + 1; i < n; ++i) {
                if (mat[i][col].is_zero()) continue;
                Scalar f = mat[i][col] * inv;
                for (std::size_t j = col; j < n; ++j) mat[i][j] -= f * mat[rank][j];
            }
            ++rank;
        }
        rep.add("window-" + std::to_string(m) + "-full-rank", rank == n,
                json{{"rank", rank}, {"size", n}});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Local-field model bridge.
// ---------------------------------------------------------------------------

/// The per-layer commuting square: descending the local transform to the
/// coinvariants equals the fiber transform of the descents, on every coset
/// indicator whose dual window fits the model.
inline Report layer_diagram_check(int k, GammaElement gamma, int p, int M) {
    Report rep{"layer-diagram", {}};
    int w = int(gamma.p) - 1; // order of the pairing form on the layer line
    auto rho = CyclotomicScalar::from_rational(p, p);
    auto one = CyclotomicScalar::from_rational(p, 1);
    for (int n = -1; n <= 1; ++n)
        for (int mq = n + 1; mq <= std::min(n + 2, M); ++mq) {
            if (-mq - w < -M || -n - w > M) continue;
            std::size_t basis_count = 1;
            for (int d = 0; d < mq - n; ++d) basis_count *= std::size_t(p);
            bool ok = true;
            json wit;
            for (std::size_t idx = 0; idx < basis_count; ++idx) {
                FiniteFunction e(p, M, n, mq);
                e.set_value(idx, one);
                auto path1 = j_map(fourier_local(e, w), -k - gamma.n);
                auto path2 = fourier_fiber_fn_core(j_map(e, k), gamma, one, rho);
                if (path1 != path2) {
                    ok = false;
                    wit = json{{"k", k}, {"gamma", to_json(gamma)}, {"n", n},
                               {"m", mq},  {"basis", idx}};
                }
            }
            rep.add("window-" + std::to_string(n) + "-" + std::to_string(mq), ok, wit);
        }
    return rep;
}

inline Report oracle_checks(int p, int M) {
    Report rep{"oracle-p" + std::to_string(p), {}};
    {
        // character sum
        {
            CyclotomicScalar acc(p);
            for (int x = 0; x < p; ++x) acc = acc + CyclotomicScalar::psi(p, x);
            rep.add("p" + std::to_string(p) + "-character-sum", acc.is_zero());
        }
        // invariants/coinvariants square: i == j on the invariant basis
        {
            bool ok = true;
            json wit;
            for (int n = -2; n <= 0; ++n)
                for (int mq = n; mq <= std::min(n + 3, M); ++mq) {
                    for (int v = n; v <= mq; ++v) {
                        FiniteFunction e(p, M, n, mq);
                        for (std::size_t idx = 0; idx < e.size(); ++idx) {
                            LaurentF x = e.rep(idx);
                            int val = x.is_zero() ? mq : x.valuation();
                            if (val == v)
                                e.set_value(idx, CyclotomicScalar::from_rational(p, 1));
                        }
                        if (!unit_invariant(e)) {
                            ok = false;
                            continue;
                        }
                        if (i_map(e) != j_map(e)) {
                            ok = false;
                            wit = json{{"n", n}, {"m", mq}, {"v", v}};
                        }
                    }
                }
            rep.add("p" + std::to_string(p) + "-invariant-square", ok, wit);
        }
        // both maps send ideal indicators to based indicators
        {
            bool ok = true;
            for (int v = -2; v <= 2; ++v) {
                FiniteFunction f = FiniteFunction::ideal_indicator(p, M, -M, M, v);
                auto one = CyclotomicScalar::from_rational(p, 1);
                FnZ<CyclotomicScalar> expect =
                    FnZ<CyclotomicScalar>::delta_geq(0, v, one);
                if (i_map(f) != expect || j_map(f) != expect) ok = false;
            }
            rep.add("p" + std::to_string(p) + "-ideal-indicators", ok);
        }
        // j kills unit-orbit differences
        {
            bool ok = true;
            FiniteFunction f(p, M, -1, 2);
            for (std::size_t i = 0; i < f.size(); ++i)
                f.set_value(i, CyclotomicScalar::from_rational(p, Rational(int(i % 5) - 2)));
            LaurentF unit = LaurentF::monomial(p, M, 0, 1);
            unit.set(1, p - 1); // 1 + (p-1)u
            auto diff = f + f.unit_translate(unit).scaled(
                                CyclotomicScalar::from_rational(p, -1));
            bool zero = true;
            auto jd = j_map(diff);
            if (!jd.is_zero()) zero = false;
            ok = zero;
            rep.add("p" + std::to_string(p) + "-orbit-differences-die", ok);
        }
        // transform of ideal indicators
        {
            bool ok = true;
            json wit;
            for (int n = -2; n <= 2; ++n)
                for (int w = -2; w <= 2; ++w) {
                    int need = std::max({3, std::abs(n) + 1, std::abs(n + w) + 1,
                                         std::abs(w) + 1});
                    int MM = need;
                    FiniteFunction f = FiniteFunction::ideal_indicator(p, MM, n, n + 1, n);
                    FiniteFunction out = fourier_local(f, w);
                    // expected: p^{-n} times the indicator of the (-n-w)-th power
                    FiniteFunction expect = FiniteFunction::ideal_indicator(
                        p, MM, out.lower(), out.upper(), -n - w);
                    Rational mass(1);
                    for (int i = 0; i < n; ++i) mass /= p;
                    for (int i = 0; i > n; --i) mass *= p;
                    expect = expect.scaled(CyclotomicScalar::from_rational(p, mass));
                    if (!(out == expect)) {
                        ok = false;
                        wit = json{{"n", n}, {"w", w}};
                    }
                }
            rep.add("p" + std::to_string(p) + "-ideal-transform", ok, wit);
        }
        // double transform is inversion
        {
            bool ok = true;
            FiniteFunction f(p, M, -1, 1);
            for (std::size_t i = 0; i < f.size(); ++i)
                f.set_value(i, CyclotomicScalar::from_rational(p, Rational(int(i % 4) - 1)));
            FiniteFunction ff = fourier_local(fourier_local(f, 0), 0);
            for (std::size_t i = 0; i < f.size(); ++i) {
                LaurentF x = f.rep(i);
                LaurentF mx(p, M);
                for (int e = -M; e < M; ++e) mx.set(e, (p - x.get(e)) % p);
                if (!(ff.value_at(mx) == f.value(i))) ok = false;
            }
            rep.add("p" + std::to_string(p) + "-double-transform-inversion", ok);
        }
        // images of the point mass and of the Haar measure
        {
            auto d0 = dist_images(DistKind::Delta0, p, M);
            auto haar = dist_images(DistKind::Haar, p, M);
            bool ok0 = true;
            for (int x = -2; x <= 2; ++x)
                if (!(d0.at(x) == Scalar(1))) ok0 = false;
            rep.add("p" + std::to_string(p) + "-point-mass-image", ok0);
            auto expected = detail::dist_eval_at(dist_g_r(0), Rational(p));
            rep.add("p" + std::to_string(p) + "-haar-image", haar == expected);
            bool okoff = true;
            for (int y = -2; y <= 1; ++y) {
                Rational got = dist_image_offdiag(DistKind::Haar, y, y + 2, p, M);
                Rational qy(1);
                for (int i = 0; i < y; ++i) qy /= p;
                for (int i = 0; i > y; --i) qy *= p;
                if (got != qy * (Rational(1) - Rational(1, p))) okoff = false;
                if (dist_image_offdiag(DistKind::Delta0, y, y + 2, p, M) != 0) okoff = false;
            }
            rep.add("p" + std::to_string(p) + "-haar-offdiagonal", okoff);
        }
        // translation by the parameter shifts discrete images and scales mass
        {
            bool ok = true;
            FiniteFunction f = FiniteFunction::ideal_indicator(p, M, -1, 2, 0);
            FiniteFunction tf = f.u_translate();
            if (!(j_map(tf) == j_map(f).translated(1))) ok = false;
            Rational ratio = haar_integral(tf).rational_part() /
                             haar_integral(f).rational_part();
            if (ratio != Rational(1, p)) ok = false;
            rep.add("p" + std::to_string(p) + "-parameter-translation", ok);
        }
        // the per-layer commuting square of the two transforms
        {
            bool ok = true;
            json wit;
            for (int k = -2; k <= 2 && ok; ++k)
                for (int gn : {0, 1})
                    for (int gp : {0, 1, 2}) {
                        Report sub = layer_diagram_check(k, GammaElement{gn, gp}, p, M);
                        if (!sub.all_passed()) {
                            ok = false;
                            wit = sub.to_json();
                        }
                    }
            rep.add("p" + std::to_string(p) + "-layer-diagram", ok, wit);
        }
    }
    return rep;
}

inline Report verify_oracle_bridge(std::uint64_t /*seed*/ = 1, int /*size*/ = 0) {
    Report rep{"oracle-bridge", {}};
    rep.merge(oracle_checks(2, 3));
    rep.merge(oracle_checks(3, 3));
    return rep;
}

// ---------------------------------------------------------------------------
// Suite dispatch.
// ---------------------------------------------------------------------------

inline Report run_suite(const std::string& name, std::uint64_t seed, int size) {
    auto sized = [&](int dflt) { return size > 0 ? size : dflt; };
    if (name == "torsor-oracle") return verify_torsor_oracle(seed, size);
    if (name == "heisenberg-laws") return verify_heisenberg_laws(seed, sized(500));
    if (name == "fourier-involution") {
        Report rep{"fourier-involution", {}};
        rep.merge(verify_fiber_identities());
        rep.merge(verify_fourier_involution(seed, sized(200)));
        rep.merge(verify_fourier_conjugacy(seed, sized(200)));
        return rep;
    }
    if (name == "pairing-invariance") {
        Report rep{"pairing-invariance", {}};
        rep.merge(verify_pairing_invariance(seed, sized(200)));
        rep.merge(verify_equivariance(seed, sized(100)));
        return rep;
    }
    if (name == "normal-form") {
        Report rep{"normal-form", {}};
        rep.merge(verify_normal_form(seed, sized(200)));
        rep.merge(verify_nondegeneracy());
        return rep;
    }
    if (name == "oracle-bridge") return verify_oracle_bridge();
    if (name == "all") {
        Report rep{"all", {}};
        rep.merge(verify_torsor_oracle());
        rep.merge(verify_heisenberg_laws(seed, sized(500)));
        rep.merge(verify_fiber_identities());
        rep.merge(verify_fourier_involution(seed, sized(200)));
        rep.merge(verify_fourier_conjugacy(seed, sized(200)));
        rep.merge(verify_pairing_invariance(seed, sized(200)));
        rep.merge(verify_equivariance(seed, sized(100)));
        rep.merge(verify_normal_form(seed, sized(200)));
        rep.merge(verify_nondegeneracy());
        rep.merge(verify_oracle_bridge());
        return rep;
    }
    throw SchemaError("unknown suite: " + name +
                      " (known: torsor-oracle, heisenberg-laws, fourier-involution, "
                      "pairing-invariance, normal-form, oracle-bridge, all)");
}

} // namespace rk2
