#include "charq/n4.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace charq;

namespace {

ModuleLabel n4lab(long long M, long long m, long long m2, long long k1, long long k2,
                  Heart h = Heart::I) {
    return {M, m, m2, k1, k2, h, Algebra::N4};
}

// ch * theta_11(tau, 2z), windowed deep enough that [-6, 6] is exact
WindowSeries times_odd_theta(const ModuleLabel& lab, const Sector& sec, const Rat& Q) {
    const WindowSeries W = n4_character(lab, sec, Q, Rat(-13));
    const PolySeries th = theta_series({1, 1, Rat(1), Rat(2), Rat(0), Rat(0)}, Q + 1);
    return ws_mul_poly(W, th);
}

}  // namespace

TEST_CASE("M = 2 characters close to theta quotients") {
    const Rat Q(6);
    const ModuleLabel lab = n4lab(2, 1, 0, 0, 0);
    auto closed = [&](const Sector& sec, int a, int b, bool with_i) {
        const WindowSeries num = times_odd_theta(lab, sec, Q);
        PolySeries rhs = theta_series(theta_ab(a, b), Q);
        if (with_i) rhs = ps_scale(rhs, g_i);
        const MismatchReport r = ws_compare(num, ws_from_poly(rhs, num.t_lo), Q, Rat(-6), Rat(6));
        INFO("theta_" << a << b << ": " << r.str());
        CHECK(r.equal);
    };
    closed({true, false}, 0, 0, true);
    closed({false, false}, 0, 1, true);
    closed({true, true}, 1, 0, true);
    closed({false, true}, 1, 1, false);
}

TEST_CASE("minimal module opens at zeta^-1 q^-1/8") {
    const N4Leading lead = n4_leading(n4lab(2, 1, 0, 0, 0), {true, false});
    CHECK(lead.q_exp == rat(-1, 8));
    CHECK(lead.zeta_top == Rat(-1));
    CHECK(!lead.degenerate);

    const WindowSeries W = n4_character(n4lab(2, 1, 0, 0, 0), {true, false}, Rat(0), Rat(-4));
    CHECK(W.coeff(rat(-1, 8), Rat(-1)) == g_one);
    CHECK(W.coeff(rat(-1, 8), Rat(1)) == GaussRat(0));
}

TEST_CASE("leading rows across the admissible grid") {
    for (long long M = 2; M <= 5; ++M)
        for (long long m = 1; m <= 3; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (Heart h : {Heart::I, Heart::III})
                for (auto& [k1, k2] : omega_domain(M, h))
                    for (long long m2 = 0; m2 <= m - 1; ++m2)
                        for (bool plus : {true, false})
                            for (bool tws : {false, true}) {
                                const ModuleLabel lab = n4lab(M, m, m2, k1, k2, h);
                                const Sector sec{plus, tws};
                                const N4Leading lead = n4_leading(lab, sec);
                                const Rat zmin = lead.zeta_top - 7;

                                WindowSeries pred;
                                pred.qmax = lead.q_exp;
                                pred.t_lo = zmin;
                                pred.z_top = lead.zeta_top;
                                const auto [q0, row] = n4_leading_row(lab, sec, zmin);
                                for (auto& [ze, c] : row.terms()) pred.add_term(q0, ze, c);

                                const WindowSeries W = n4_character(lab, sec, q0, zmin);
                                const MismatchReport r =
                                    ws_compare(W, pred, q0, zmin, lead.zeta_top + 2);
                                INFO(heart_str(h) << " (" << M << "," << m << "," << m2 << ","
                                                  << k1 << "," << k2 << ") " << sector_str(sec)
                                                  << ": " << r.str());
                                CHECK(r.equal);
                            }
        }
}

TEST_CASE("window depth does not alter computed columns") {
    const ModuleLabel lab = n4lab(3, 2, 1, 0, 1, Heart::III);
    for (bool plus : {true, false})
        for (bool tws : {false, true}) {
            const Sector sec{plus, tws};
            const WindowSeries a = n4_character(lab, sec, Rat(3), Rat(-4));
            const WindowSeries b = n4_character(lab, sec, Rat(3), Rat(-9));
            CHECK(ws_equal(a, b, Rat(3), Rat(-4), Rat(5)));
        }
}

TEST_CASE("hearts II and IV are served through their images") {
    const Rat Q(2), lo(-5);
    const WindowSeries a = n4_character(n4lab(4, 1, 0, 1, 1, Heart::II), {true, false}, Q, lo);
    const WindowSeries b = n4_character(n4lab(4, 1, 0, 0, 1, Heart::III), {true, false}, Q, lo);
    CHECK(ws_equal(a, b, Q, lo, Rat(4)));
    const WindowSeries c = n4_character(n4lab(4, 1, 0, 1, 0, Heart::IV), {false, true}, Q, lo);
    const WindowSeries d = n4_character(n4lab(4, 1, 0, 0, 0, Heart::I), {false, true}, Q, lo);
    CHECK(ws_equal(c, d, Q, lo, Rat(4)));
}

TEST_CASE("companion N2 modules assemble the numerators") {
    for (long long M = 2; M <= 4; ++M)
        for (long long m = 1; m <= 3; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (Heart h : {Heart::I, Heart::III})
                for (auto& [k1, k2] : omega_domain(M, h))
                    for (long long m2 = 0; m2 <= m - 1; ++m2) {
                        RelationReport rep =
                            n2n4_relation_check(n4lab(M, m, m2, k1, k2, h), Rat(4));
                        REQUIRE(rep.rows.size() == (h == Heart::I ? 4u : 2u));
                        for (auto& row : rep.rows) {
                            INFO("(" << M << "," << m << "," << m2 << "," << k1 << "," << k2
                                     << ") " << row.name << ": " << row.detail);
                            CHECK(row.pass);
                        }
                    }
        }
}

TEST_CASE("relation check accepts heart II through its image") {
    RelationReport rep = n2n4_relation_check(n4lab(4, 1, 0, 1, 1, Heart::II), Rat(3));
    CHECK(rep.label.heart == Heart::III);
    CHECK(rep.pass());
}

TEST_CASE("mismatches are reported with their first offending cell") {
    const WindowSeries a = n4_character(n4lab(3, 1, 0, 0, 0), {true, false}, Rat(2), Rat(-6));
    const WindowSeries b = n4_character(n4lab(3, 1, 0, 0, 1), {true, false}, Rat(2), Rat(-6));
    const MismatchReport r = ws_compare(a, b, Rat(2), Rat(-6), Rat(6));
    REQUIRE(!r.equal);
    const CheckResult c = check_from("probe", r);
    CHECK(!c.pass);
    CHECK(!c.detail.empty());
}
