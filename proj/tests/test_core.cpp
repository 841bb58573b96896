// Foundation layer: exact rationals, Q(i), Laurent coefficients, truncated
// q-expansions, tail-windowed series, JSON interchange.

#include <catch2/catch_amalgamated.hpp>

#include "charq/gauss.hpp"
#include "charq/json_io.hpp"
#include "charq/rational.hpp"
#include "charq/series.hpp"
#include "charq/window.hpp"
#include "charq/zpoly.hpp"

#include <random>
#include <stdexcept>

using namespace charq;

TEST_CASE("rational basics") {
    REQUIRE(rat(3, 6) == rat(1, 2));
    REQUIRE(rat_str(rat(7)) == "7");
    REQUIRE(rat_str(rat(-3, 4)) == "-3/4");
    REQUIRE(rat_str(rat(6, -4)) == "-3/2");

    REQUIRE(rat_parse("-3/4") == rat(-3, 4));
    REQUIRE(rat_parse("6/4") == rat(3, 2));
    REQUIRE(rat_parse("-12") == rat(-12));
    REQUIRE_THROWS_AS(rat_parse(""), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_parse("seven"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_parse("1/0"), std::invalid_argument);

    REQUIRE(rat_floor(rat(-7, 2)) == -4);
    REQUIRE(rat_ceil(rat(-7, 2)) == -3);
    REQUIRE(rat_floor(rat(6, 3)) == 2);
    REQUIRE(rat_ceil(rat(6, 3)) == 2);
    REQUIRE(frac_part(rat(-7, 2)) == rat(1, 2));
    REQUIRE(frac_part(rat(5)) == 0);
    REQUIRE(frac_part(rat(-1, 3)) == rat(2, 3));

    REQUIRE(is_integer(rat(4, 2)));
    REQUIRE(!is_integer(rat(1, 2)));
    REQUIRE(is_half_integer(rat(-5, 2)));
    REQUIRE(is_half_integer(rat(3)));
    REQUIRE(!is_half_integer(rat(1, 4)));

    REQUIRE(floor_ll(rat(-9, 4)) == -3);
    REQUIRE(ceil_ll(rat(-9, 4)) == -2);
    REQUIRE_THROWS_AS(to_ll(Int(1) << 80), std::overflow_error);
    REQUIRE(rat_double(rat(1, 2)) == 0.5);
}

TEST_CASE("gaussian rationals") {
    REQUIRE(g_i * g_i == GaussRat(-1));
    REQUIRE(g_i.conj() == -g_i);

    GaussRat a(rat(2), rat(3));
    REQUIRE(a * a.inverse() == g_one);
    REQUIRE(a / a == g_one);
    REQUIRE((a - a).is_zero());
    REQUIRE(a.str() == "2+3*i");
    REQUIRE((-a).str() == "-2-3*i");
    REQUIRE(GaussRat(rat(0), rat(-1, 2)).str() == "-1/2*i");
    REQUIRE_THROWS_AS(GaussRat(0).inverse(), std::domain_error);

    // e^{2*pi*i*r} on the quarter lattice
    REQUIRE(quarter_phase(rat(0)) == g_one);
    REQUIRE(quarter_phase(rat(1, 4)) == g_i);
    REQUIRE(quarter_phase(rat(1, 2)) == GaussRat(-1));
    REQUIRE(quarter_phase(rat(3, 4)) == -g_i);
    REQUIRE(quarter_phase(rat(5, 4)) == g_i);
    REQUIRE(quarter_phase(rat(-1, 4)) == -g_i);
    REQUIRE_THROWS_AS(quarter_phase(rat(1, 3)), std::domain_error);

    REQUIRE(parity_sign(rat(3)) == -1);
    REQUIRE(parity_sign(rat(-4)) == 1);
    REQUIRE(parity_sign(-3LL) == -1);
    REQUIRE_THROWS_AS(parity_sign(rat(1, 2)), std::domain_error);
}

TEST_CASE("zeta laurent polynomials") {
    ZPoly zero;
    REQUIRE(zero.is_zero());
    REQUIRE_THROWS_AS(zero.min_exp(), std::logic_error);
    REQUIRE_THROWS_AS(zero.max_exp(), std::logic_error);
    REQUIRE(ZPoly::monomial(rat(2), GaussRat(0)).is_zero());

    // (zeta^{1/2} - zeta^{-1/2}) (zeta^{1/2} + zeta^{-1/2}) = zeta - zeta^{-1}
    ZPoly d = ZPoly::monomial(rat(1, 2), g_one) + ZPoly::monomial(rat(-1, 2), -g_one);
    ZPoly s = ZPoly::monomial(rat(1, 2), g_one) + ZPoly::monomial(rat(-1, 2), g_one);
    ZPoly p = d * s;
    REQUIRE(p.size() == 2);
    REQUIRE(p.coeff(rat(1)) == g_one);
    REQUIRE(p.coeff(rat(-1)) == -g_one);
    REQUIRE(p.min_exp() == rat(-1));
    REQUIRE(p.max_exp() == rat(1));

    REQUIRE(p.shifted(rat(1)).coeff(rat(0)) == -g_one);
    REQUIRE(p.flipped().coeff(rat(1)) == -g_one);
    REQUIRE(p.scaled(g_i).coeff(rat(1)) == g_i);
    REQUIRE(p.clipped(rat(0), rat(5)).size() == 1);

    ZPoly c = p;
    c.add_term(rat(1), -g_one);
    c.add_term(rat(-1), g_one);
    REQUIRE(c.is_zero());
}

TEST_CASE("exact binomial division") {
    // single coset, u = -1: f = g (1 + zeta^{-1})
    ZPoly g = ZPoly::monomial(rat(2), GaussRat(3)) + ZPoly::monomial(rat(1), g_i) +
              ZPoly::monomial(rat(-3), GaussRat(-5));
    ZPoly bin_down = ZPoly::monomial(rat(0), g_one) + ZPoly::monomial(rat(-1), g_one);
    REQUIRE(divide_binomial_exact(g * bin_down, GaussRat(-1), -1) == g);

    // mixed cosets, u = +1: f = g (1 - zeta^{-1})
    ZPoly h = ZPoly::monomial(rat(1, 2), g_one) + ZPoly::monomial(rat(-1, 2), g_one) +
              ZPoly::monomial(rat(1), GaussRat(2)) + ZPoly::monomial(rat(0), g_one);
    ZPoly bin2 = ZPoly::monomial(rat(0), g_one) + ZPoly::monomial(rat(-1), -g_one);
    REQUIRE(divide_binomial_exact(h * bin2, g_one, -1) == h);

    // upward direction, u = i: f = g (1 - i zeta)
    ZPoly k = ZPoly::monomial(rat(-1), g_one) + ZPoly::monomial(rat(0), GaussRat(2));
    ZPoly bin_up = ZPoly::monomial(rat(0), g_one) + ZPoly::monomial(rat(1), -g_i);
    REQUIRE(divide_binomial_exact(k * bin_up, g_i, 1) == k);

    REQUIRE(divide_binomial_exact(ZPoly{}, g_one, -1).is_zero());
    REQUIRE_THROWS_AS(divide_binomial_exact(ZPoly::monomial(rat(0), g_one), g_one, -1),
                      std::domain_error);
    REQUIRE_THROWS_AS(divide_binomial_exact(g, g_one, 0), std::invalid_argument);
}

TEST_CASE("scalar q-series multiplication and truncation") {
    ScalarQSeries a;  // 1 + q^{1/2}, certified to 2
    a.qmax = rat(2);
    a.add_term(rat(0), g_one);
    a.add_term(rat(1, 2), g_one);
    ScalarQSeries b;  // 1 - q, certified to 3
    b.qmax = rat(3);
    b.add_term(rat(0), g_one);
    b.add_term(rat(1), -g_one);

    ScalarQSeries p = sq_mul(a, b);
    REQUIRE(p.qmax == rat(2));
    REQUIRE(p.t.size() == 4);
    REQUIRE(p.coeff(rat(0)) == g_one);
    REQUIRE(p.coeff(rat(1, 2)) == g_one);
    REQUIRE(p.coeff(rat(1)) == -g_one);
    REQUIRE(p.coeff(rat(3, 2)) == -g_one);

    // negative lowest orders tighten the certified range
    ScalarQSeries c;  // q^{-1} + 1, certified to 2
    c.qmax = rat(2);
    c.add_term(rat(-1), g_one);
    c.add_term(rat(0), g_one);
    ScalarQSeries d;  // q^{-1/2}, certified to 1
    d.qmax = rat(1);
    d.add_term(rat(-1, 2), g_one);
    ScalarQSeries cd = sq_mul(c, d);
    REQUIRE(cd.qmax == rat(0));
    REQUIRE(cd.coeff(rat(-3, 2)) == g_one);
    REQUIRE(cd.coeff(rat(-1, 2)) == g_one);

    REQUIRE(sq_add(a, b).qmax == rat(2));
    REQUIRE(sq_shift(a, rat(1, 2)).qmax == rat(5, 2));
    REQUIRE(sq_shift(a, rat(1, 2)).coeff(rat(1)) == g_one);
    REQUIRE(sq_scale(a, g_i).coeff(rat(0)) == g_i);

    // terms beyond qmax are refused
    ScalarQSeries e;
    e.qmax = rat(1);
    e.add_term(rat(2), g_one);
    REQUIRE(e.is_zero());
}

TEST_CASE("series inverse round trips") {
    REQUIRE_THROWS_AS(scalar_inverse(ScalarQSeries{}), std::domain_error);

    {  // 1/(1-q) = 1 + q + q^2 + ...
        ScalarQSeries s;
        s.qmax = rat(6);
        s.add_term(rat(0), g_one);
        s.add_term(rat(1), -g_one);
        ScalarQSeries inv = scalar_inverse(s);
        REQUIRE(inv.qmax == rat(6));
        for (int k = 0; k <= 6; ++k) REQUIRE(inv.coeff(rat(k)) == g_one);
    }

    const GaussRat leads[6] = {g_one, -g_one, g_i, -g_i, GaussRat(2), GaussRat(rat(1), rat(1))};
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 100; ++iter) {
        const Rat d = rat(static_cast<long long>(rng() % 5) - 2, 2);  // -1 .. 1 step 1/2
        ScalarQSeries s;
        s.qmax = d + 4;
        s.add_term(d, leads[rng() % 6]);
        for (int k = 1; k <= 8; ++k) {
            GaussRat c(rat(static_cast<long long>(rng() % 5) - 2),
                       rat(static_cast<long long>(rng() % 3) - 1));
            s.add_term(d + rat(k, 2), c);
        }
        ScalarQSeries inv = scalar_inverse(s);
        REQUIRE(inv.qmax == rat(4) - d);
        ScalarQSeries p = sq_mul(s, inv);
        REQUIRE(p.qmax == rat(4));
        REQUIRE(p.t.size() == 1);
        REQUIRE(p.coeff(rat(0)) == g_one);
    }
}

TEST_CASE("poly series algebra") {
    PolySeries a = ps_zero(rat(2));  // zeta + q, certified to 2
    a.add_term(rat(0), rat(1), g_one);
    a.add_term(rat(1), rat(0), g_one);
    PolySeries b = ps_zero(rat(3));  // q^{1/2} zeta^{-1}, certified to 3
    b.add_term(rat(1, 2), rat(-1), g_one);

    PolySeries p = ps_mul(a, b);
    REQUIRE(p.qmax == rat(5, 2));
    REQUIRE(p.order(rat(1, 2)) != nullptr);
    REQUIRE(p.order(rat(1, 2))->coeff(rat(0)) == g_one);
    REQUIRE(p.order(rat(3, 2))->coeff(rat(-1)) == g_one);
    REQUIRE(p.order(rat(2)) == nullptr);
    REQUIRE(p.max_zeta() == rat(0));
    REQUIRE(p.min_zeta() == rat(-1));

    REQUIRE(ps_flip_zeta(a).order(rat(0))->coeff(rat(-1)) == g_one);
    REQUIRE(ps_stretch_zeta(a, rat(2)).order(rat(0))->coeff(rat(2)) == g_one);
    PolySeries sh = ps_shift(a, rat(1, 2), rat(-1), g_i);
    REQUIRE(sh.qmax == rat(5, 2));
    REQUIRE(sh.order(rat(1, 2))->coeff(rat(0)) == g_i);

    ScalarQSeries s = sq_one(rat(10));
    s.add_term(rat(1), g_one);
    PolySeries as = ps_mul_scalar_series(a, s);
    REQUIRE(as.qmax == rat(2));
    REQUIRE(as.order(rat(1))->coeff(rat(1)) == g_one);  // zeta*q from a0*s1
    REQUIRE(as.order(rat(1))->coeff(rat(0)) == g_one);
}

TEST_CASE("poly series comparison pinpoints first mismatch") {
    PolySeries a = ps_zero(rat(3));
    a.add_term(rat(0), rat(0), g_one);
    a.add_term(rat(1), rat(-5), g_one);
    a.add_term(rat(1), rat(0), GaussRat(2));
    PolySeries b = ps_zero(rat(3));
    b.add_term(rat(0), rat(0), g_one);
    b.add_term(rat(1), rat(-5), g_one);
    b.add_term(rat(1), rat(0), GaussRat(3));
    b.add_term(rat(1), rat(-2), g_i);

    REQUIRE(ps_equal(a, b, rat(0)));
    MismatchReport r = ps_compare(a, b, rat(3));
    REQUIRE(!r.equal);
    REQUIRE(r.q_exp == rat(1));
    REQUIRE(r.zeta_exp == rat(-2));  // lowest differing zeta-column
    REQUIRE(r.lhs == GaussRat(0));
    REQUIRE(r.rhs == g_i);
    REQUIRE(r.str().find("q^1") != std::string::npos);

    // a missing order entirely
    PolySeries c = ps_zero(rat(3));
    c.add_term(rat(0), rat(0), g_one);
    MismatchReport r2 = ps_compare(a, c, rat(3));
    REQUIRE(!r2.equal);
    REQUIRE(r2.q_exp == rat(1));
    REQUIRE(r2.rhs == GaussRat(0));

    REQUIRE_THROWS_AS(ps_compare(a, b, rat(4)), std::invalid_argument);
}

TEST_CASE("window series trust bounds") {
    // w: single q^0 column  sum_{x=-6}^{-1} zeta^x  (a truncated downward tail)
    WindowSeries w;
    w.qmax = rat(3);
    w.t_lo = rat(-6);
    w.z_top = rat(-1);
    for (int x = -6; x <= -1; ++x) w.add_term(rat(0), rat(x), g_one);

    REQUIRE(w.coeff(rat(0), rat(-3)) == g_one);
    REQUIRE(w.coeff(rat(1), rat(-3)) == GaussRat(0));
    REQUIRE_THROWS_AS(w.coeff(rat(4), rat(-1)), std::invalid_argument);
    REQUIRE_THROWS_AS(w.coeff(rat(0), rat(-7)), std::invalid_argument);
    REQUIRE(w.column(rat(-2)).coeff(rat(0)) == g_one);
    REQUIRE_THROWS_AS(w.column(rat(-7)), std::invalid_argument);

    // (sum_{x<=-1} zeta^x)(1 - zeta^{-1}) telescopes to zeta^{-1}; the product
    // keeps the full trusted width since max_zeta of the factor is 0.
    PolySeries p = ps_zero(rat(5));
    p.add_term(rat(0), rat(0), g_one);
    p.add_term(rat(0), rat(-1), -g_one);
    WindowSeries r = ws_mul_poly(w, p);
    REQUIRE(r.qmax == rat(3));
    REQUIRE(r.t_lo == rat(-6));
    REQUIRE(r.z_top == rat(-1));
    WindowSeries want;
    want.qmax = rat(3);
    want.t_lo = rat(-6);
    want.z_top = rat(-1);
    want.add_term(rat(0), rat(-1), g_one);
    REQUIRE(ws_equal(r, want, rat(3), rat(-6), rat(0)));

    // same product through the window-times-window route
    WindowSeries r2 = ws_mul_ws(w, ws_from_poly(p, rat(-10)));
    REQUIRE(r2.t_lo == rat(-6));  // max(-6+0, -10-1)
    REQUIRE(r2.z_top == rat(-1));
    REQUIRE(ws_equal(r2, want, rat(3), rat(-6), rat(0)));

    // two genuine tails: (sum_{x<=-1} zeta^x)^2 = sum_{c<=-2} (-c-1) zeta^c
    WindowSeries sq = ws_mul_ws(w, w);
    REQUIRE(sq.t_lo == rat(-7));
    REQUIRE(sq.z_top == rat(-2));
    for (int c = -7; c <= -2; ++c)
        REQUIRE(sq.coeff(rat(0), rat(c)) == GaussRat(-c - 1));

    WindowSeries sum = ws_add(w, want);
    REQUIRE(sum.t_lo == rat(-6));
    REQUIRE(sum.coeff(rat(0), rat(-1)) == GaussRat(2));

    MismatchReport m = ws_compare(w, want, rat(3), rat(-6), rat(0));
    REQUIRE(!m.equal);
    REQUIRE(m.q_exp == rat(0));
    REQUIRE(m.zeta_exp == rat(-6));
    REQUIRE_THROWS_AS(ws_compare(w, want, rat(3), rat(-8), rat(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(ws_compare(w, want, rat(4), rat(-6), rat(0)), std::invalid_argument);

    // ws_from_poly clips below the declared floor
    PolySeries wide = ps_zero(rat(2));
    wide.add_term(rat(0), rat(-12), g_one);
    wide.add_term(rat(0), rat(1), g_one);
    WindowSeries clipped = ws_from_poly(wide, rat(-3));
    REQUIRE(clipped.z_top == rat(1));
    REQUIRE(clipped.coeff(rat(0), rat(1)) == g_one);
    REQUIRE(clipped.coeff(rat(0), rat(-3)) == GaussRat(0));
}

TEST_CASE("empty stores certify only up to their own qmax") {
    // q^{-1} (complete to 5) times a factor whose store is empty but whose
    // function may have terms just above 2: the product can acquire terms
    // from order 1 + epsilon on, so nothing beyond order 1 is certified.
    ScalarQSeries a;
    a.qmax = rat(5);
    a.add_term(rat(-1), g_one);
    ScalarQSeries b;
    b.qmax = rat(2);
    REQUIRE(sq_mul(a, b).qmax == rat(1));
    REQUIRE(sq_mul(b, a).qmax == rat(1));

    PolySeries pa = ps_zero(rat(5));
    pa.add_term(rat(-1), rat(0), g_one);
    REQUIRE(ps_mul(pa, ps_zero(rat(2))).qmax == rat(1));

    REQUIRE(sq_truncate(a, rat(3)).qmax == rat(3));
    REQUIRE_THROWS_AS(sq_truncate(b, rat(4)), std::invalid_argument);
    REQUIRE(ps_truncate(pa, rat(0)).t.size() == 1);
    REQUIRE_THROWS_AS(ps_truncate(pa, rat(6)), std::invalid_argument);
}

TEST_CASE("ring laws hold on randomized series") {
    std::mt19937 rng(7151);
    auto rand_poly = [&](long long qmax_num) {
        PolySeries p = ps_zero(rat(qmax_num, 2));
        const int nt = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < nt; ++i)
            p.add_term(rat(static_cast<long long>(rng() % 5), 2),
                       rat(static_cast<long long>(rng() % 7) - 3, 2),
                       GaussRat(rat(static_cast<long long>(rng() % 5) - 2),
                                rat(static_cast<long long>(rng() % 3) - 1)));
        return p;
    };
    for (int it = 0; it < 40; ++it) {
        PolySeries a = rand_poly(8), b = rand_poly(8), c = rand_poly(8);

        PolySeries ab = ps_mul(a, b);
        REQUIRE(ps_equal(ab, ps_mul(b, a), ab.qmax));

        PolySeries ab_c = ps_mul(ab, c), a_bc = ps_mul(a, ps_mul(b, c));
        REQUIRE(ps_equal(ab_c, a_bc, std::min(ab_c.qmax, a_bc.qmax)));

        PolySeries d1 = ps_mul(a, ps_add(b, c));
        PolySeries d2 = ps_add(ps_mul(a, b), ps_mul(a, c));
        REQUIRE(ps_equal(d1, d2, std::min(d1.qmax, d2.qmax)));
    }

    // window-times-poly associates with poly multiplication
    WindowSeries w;
    w.qmax = rat(4);
    w.t_lo = rat(-8);
    w.z_top = rat(-1);
    for (int x = -8; x <= -1; ++x) w.add_term(rat(0), rat(x), g_one);
    for (int x = -8; x <= -2; ++x) w.add_term(rat(1, 2), rat(x), g_i);
    for (int it = 0; it < 25; ++it) {
        PolySeries p1 = rand_poly(8), p2 = rand_poly(8);
        WindowSeries l = ws_mul_poly(ws_mul_poly(w, p1), p2);
        WindowSeries r = ws_mul_poly(w, ps_mul(p1, p2));
        const Rat ord = std::min(l.qmax, r.qmax);
        const Rat lo = std::max(l.t_lo, r.t_lo);
        const Rat hi = std::max(l.z_top, r.z_top);
        REQUIRE(ws_equal(l, r, ord, lo, hi));
    }
}

TEST_CASE("json round trips are lossless and byte-stable") {
    PolySeries a = ps_zero(rat(9, 8));
    a.add_term(rat(-1, 8), rat(-1), g_one);
    a.add_term(rat(0), rat(1, 2), GaussRat(rat(0), rat(-3, 2)));
    a.add_term(rat(1), rat(0), GaussRat(rat(2), rat(5)));

    ordered_json ja = to_json(a);
    REQUIRE(ja["qmax"] == "9/8");
    REQUIRE(ja["min_q"] == "-1/8");
    REQUIRE(ja["terms"][0]["q"] == "-1/8");
    REQUIRE(ja["terms"][0]["zeta"] == "-1");
    REQUIRE(ja["terms"][0]["re"] == "1");
    REQUIRE(ja["terms"][0]["im"] == "0");

    PolySeries a2 = poly_from_json(ordered_json::parse(ja.dump()));
    REQUIRE(ps_equal(a, a2, rat(9, 8)));
    REQUIRE(to_json(a2).dump() == ja.dump());

    WindowSeries w;
    w.qmax = rat(2);
    w.t_lo = rat(-5);
    w.z_top = rat(-1, 2);
    w.add_term(rat(-1, 4), rat(-1, 2), g_i);
    w.add_term(rat(0), rat(-3), GaussRat(rat(1, 3)));
    ordered_json jw = to_json(w);
    REQUIRE(jw["window"]["lo"] == "-5");
    REQUIRE(jw["window"]["hi"] == "-1/2");
    WindowSeries w2 = window_from_json(ordered_json::parse(jw.dump()));
    REQUIRE(w2.t_lo == w.t_lo);
    REQUIRE(w2.z_top == w.z_top);
    REQUIRE(ws_equal(w, w2, rat(2), rat(-5), rat(0)));
    REQUIRE(to_json(w2).dump() == jw.dump());
}
