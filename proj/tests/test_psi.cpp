#include <catch2/catch_amalgamated.hpp>

#include "charq/numeric_eval.hpp"
#include "charq/psi.hpp"
#include "charq/theta.hpp"

#include <complex>
#include <random>

using namespace charq;

namespace {

// Independent oracle: enumerate the double sum straight from the printed
// region tables (interior rows split at l = 0 resp. l = 0/1; the boundary
// label tables for j = 0 on the (z,-z) slice and k = 0 on (-z,z)), with no
// row/slope analysis at all.  Complete for |l|, |n| <= 40, which at the tiny
// q-orders used here covers everything many times over.
WindowSeries brute_branch(const PsiSpec& sp, int b, const Rat& qmax, const Rat& zfloor) {
    WindowSeries w;
    w.qmax = qmax;
    w.t_lo = zfloor;
    w.z_top = zfloor;
    const Rat p0 = sp.m / Rat(sp.M) * (sp.k - sp.j);
    const Rat o(sp.orientation);
    const bool interior = sp.j > 0 && sp.k > 0;
    for (long long l = -40; l <= 40; ++l)
        for (long long n = -40; n <= 40; ++n) {
            int sgn = 0;
            if (interior) {
                if (b == 1)
                    sgn = (l >= 0 && n >= 0) ? 1 : (l < 0 && n < 0) ? -1 : 0;
                else
                    sgn = (l > 0 && n >= 0) ? 1 : (l <= 0 && n < 0) ? -1 : 0;
            } else if (sp.j == 0) {  // printed for the (z,-z) slice, both branches
                sgn = (l > 0 && n >= 0) ? 1 : (l <= 0 && n < 0) ? -1 : 0;
            } else {  // k = 0, printed for the (-z,z) slice, both branches
                sgn = (l >= 0 && n >= 0) ? 1 : (l < 0 && n < 0) ? -1 : 0;
            }
            if (sgn == 0) continue;
            const Rat sj = (b == 1) ? sp.j : -sp.j;
            const Rat sk = (b == 1) ? sp.k : -sp.k;
            const Rat E = Rat(sp.M) * sp.m * (Rat(l) + sj / sp.M) * (Rat(l) + sk / sp.M) +
                          (Rat(n) + sp.s) * (Rat(sp.M * l) + ((b == 1) ? sp.j : -sp.k));
            const Rat zE = o * ((Rat(n) + sp.s) + p0);
            if (E > qmax || zE < zfloor) continue;
            w.add_term(E, zE, GaussRat(sgn) * quarter_phase((Rat(n) + sp.s) * sp.eps));
            if (zE > w.z_top) w.z_top = zE;
        }
    w.prune();
    return w;
}

// partial sum of an exact expansion at a point
cnum eval_poly(const PolySeries& p, cnum tau, cnum z) {
    cnum acc(0, 0);
    for (const auto& [qe, row] : p.t)
        for (const auto& [ze, c] : row.terms())
            acc += c.to_complex() * e2pi(tau * rat_double(qe) + z * rat_double(ze));
    return acc;
}

PsiSpec mk(long long M, Rat m, Rat s, Rat eps, Rat epsp, Rat j, Rat k, int branch, int orient) {
    return PsiSpec{M, m, s, eps, epsp, j, k, branch, orient};
}

}  // namespace

TEST_CASE("psi specs are validated") {
    const Rat h = rat(1, 2);
    REQUIRE_NOTHROW(mk(2, 1, 0, h, h, h, h, 0, +1).validate());
    REQUIRE_NOTHROW(mk(2, rat(1, 2), rat(-1, 2), 0, 0, 1, 0, 0, -1).validate());
    // both labels zero
    REQUIRE_THROWS_AS(mk(2, 1, 0, 0, 0, 0, 0, 0, +1).validate(), std::invalid_argument);
    // coprimality: even m against even M, and a shared odd factor
    REQUIRE_THROWS_AS(mk(2, 2, 0, 0, 0, 1, 0, 0, +1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(mk(3, rat(3, 2), 0, 0, 0, 1, 2, 0, +1).validate(), std::invalid_argument);
    // labels outside eps' + Z or outside [0, M)
    REQUIRE_THROWS_AS(mk(2, 1, 0, 0, h, 1, 0, 0, +1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(mk(2, 1, 0, 0, 0, 2, 1, 0, +1).validate(), std::invalid_argument);
    // s, eps on the wrong lattice; bad branch / orientation tags
    REQUIRE_THROWS_AS(mk(2, 1, rat(1, 3), 0, 0, 1, 0, 0, +1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(mk(2, 1, 0, rat(1, 4), 0, 1, 0, 0, +1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(mk(2, 1, 0, 0, 0, 1, 0, 5, +1).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(mk(2, 1, 0, 0, 0, 1, 0, 0, 0).validate(), std::invalid_argument);
    // boundary labels refuse the finite-support constructor
    REQUIRE_THROWS_AS(psi_series(mk(2, 1, 0, h, 0, 1, 0, 0, +1), Rat(2)), std::invalid_argument);
}

TEST_CASE("branch expansions match the printed double-sum regions") {
    const Rat h = rat(1, 2);
    const Rat Q(3), lo(-25);
    const PsiSpec specs[] = {
        mk(2, 1, 0, h, h, h, h, 0, +1),
        mk(3, 1, -1, 0, h, rat(3, 2), h, 0, -1),
        mk(5, 2, -2, h, h, rat(5, 2), rat(3, 2), 0, +1),
        mk(3, rat(1, 2), rat(-1, 2), 0, 0, 1, 2, 0, +1),
        mk(4, 3, -1, h, h, h, rat(5, 2), 0, -1),
        mk(3, 1, 0, h, 0, 0, 2, 0, +1),          // boundary, printed slice
        mk(4, rat(3, 2), -1, 0, 0, 0, 3, 0, +1),  // boundary, printed slice
        mk(3, 1, -1, h, 0, 2, 0, 0, -1),          // boundary, printed slice
        mk(2, 1, 0, 0, 0, 1, 0, 0, -1),           // boundary, printed slice
    };
    for (const auto& base : specs)
        for (int b : {1, 2}) {
            PsiSpec sp = base;
            sp.branch = b;
            INFO("M=" << sp.M << " m=" << rat_str(sp.m) << " s=" << rat_str(sp.s) << " j="
                      << rat_str(sp.j) << " k=" << rat_str(sp.k) << " branch=" << b
                      << " orient=" << sp.orientation);
            const auto mine = psi_window(sp, Q, lo);
            const auto ref = brute_branch(sp, b, Q, lo);
            const auto rep = ws_compare(mine, ref, Q, Rat(-18), Rat(12));
            INFO(rep.str());
            REQUIRE(rep.equal);
        }
}

TEST_CASE("difference branch is branch one minus branch two") {
    const Rat h = rat(1, 2);
    {
        PsiSpec sp = mk(3, 2, -1, h, h, rat(3, 2), h, 0, +1);
        const auto d = psi_series(sp, Rat(4));
        sp.branch = 1;
        const auto b1 = psi_series(sp, Rat(4));
        sp.branch = 2;
        const auto b2 = psi_series(sp, Rat(4));
        REQUIRE(ps_equal(d, ps_add(b1, ps_scale(b2, -g_one)), Rat(4)));
    }
    {
        PsiSpec sp = mk(3, 1, 0, h, 0, 0, 1, 0, +1);
        const auto d = psi_window(sp, Rat(4), Rat(-12));
        sp.branch = 1;
        const auto b1 = psi_window(sp, Rat(4), Rat(-12));
        sp.branch = 2;
        const auto b2 = psi_window(sp, Rat(4), Rat(-12));
        REQUIRE(ws_equal(ws_add(b1, ws_scale(b2, -g_one)), d, Rat(4), Rat(-12), Rat(6)));
    }
}

TEST_CASE("level-(2,1) slices against eta and theta quotients") {
    const Rat h = rat(1, 2);
    const Rat Q(6), QB = Q + rat(1, 8);
    const auto eta3 = ps_from_scalar(eta_quotient({{1, 3}}, QB));

    SECTION("interior labels: unit product with the even thetas") {
        // eps = 1/2 pairs with theta_00, eps = 0 with theta_01
        const auto psiA = psi_series(mk(2, 1, 0, h, h, h, h, 0, +1), QB);
        REQUIRE(ps_equal(ps_mul(psiA, theta_series({0, 0, 1, 1, 0, 0}, QB)), eta3, Q));
        const auto psiB = psi_series(mk(2, 1, 0, 0, h, h, h, 0, +1), QB);
        REQUIRE(ps_equal(ps_mul(psiB, theta_series({0, 1, 1, 1, 0, 0}, QB)), eta3, Q));
    }
    SECTION("boundary labels: unit product with the odd thetas") {
        const auto t10 = theta_series({1, 0, 1, 1, 0, 0}, QB);
        const auto t11 = theta_series({1, 1, 1, 1, 0, 0}, QB);
        const Rat lo(-8);
        {
            const auto W = psi_window(mk(2, 1, 0, h, 0, 1, 0, 0, +1), Q, lo - t10.max_zeta());
            const auto P = ws_mul_poly(W, t10);
            const auto rep = ws_compare(P, ws_from_poly(eta3, lo), Q, lo, Rat(8));
            INFO(rep.str());
            REQUIRE(rep.equal);
        }
        {
            const auto W = psi_window(mk(2, 1, 0, 0, 0, 1, 0, 0, +1), Q, lo - t11.max_zeta());
            const auto P = ws_mul_poly(W, t11);
            const auto rep =
                ws_compare(P, ws_from_poly(ps_scale(eta3, g_i), lo), Q, lo, Rat(8));
            INFO(rep.str());
            REQUIRE(rep.equal);
        }
    }
}

TEST_CASE("leading terms match the expansions") {
    const Rat h = rat(1, 2);

    SECTION("reference values") {
        // interior unit: bare monomial at q^{1/8}, zeta^0
        const auto a = psi_leading(mk(2, 1, 0, h, h, h, h, 0, +1));
        CHECK(a.q_exp == rat(1, 8));
        CHECK(a.zeta_exp == 0);
        CHECK(a.coeff.size() == 1);
        CHECK(a.coeff.coeff(Rat(0)) == g_one);
        // boundary (1,0) on (-z,z) with s = 0: alternating tail below zeta^{1/2}
        const auto b = psi_leading(mk(2, 1, 0, h, 0, 1, 0, 0, -1), 6);
        CHECK(b.q_exp == 0);
        CHECK(b.zeta_exp == h);
        CHECK(b.coeff.max_exp() == -h);
        CHECK(b.coeff.coeff(-h) == g_one);
        CHECK(b.coeff.coeff(-h - 1) == -g_one);
        CHECK(b.coeff.coeff(-h - 2) == g_one);
        // boundary (0,2) on (z,-z) at level (3,1): reference exponent 2/3
        const auto c = psi_leading(mk(3, 1, 0, h, 0, 0, 2, 0, +1), 6);
        CHECK(c.q_exp == 0);
        CHECK(c.zeta_exp == rat(2, 3));
        CHECK(c.coeff.max_exp() == rat(-1, 3));
        CHECK(c.coeff.coeff(rat(-1, 3)) == g_one);
        CHECK(c.coeff.coeff(rat(-4, 3)) == -g_one);
    }
    SECTION("interior leading cells against the series") {
        const PsiSpec specs[] = {
            mk(2, 1, 0, h, h, h, h, 0, +1),     mk(3, 2, -1, 0, h, rat(3, 2), h, 0, +1),
            mk(5, 3, -2, h, h, h, rat(7, 2), 0, -1),  mk(5, 2, -1, 0, 0, 1, 3, 0, -1),
            mk(4, 3, -2, h, 0, 2, 1, 0, +1),
        };
        for (const auto& sp : specs) {
            INFO("M=" << sp.M << " m=" << rat_str(sp.m) << " s=" << rat_str(sp.s) << " j="
                      << rat_str(sp.j) << " k=" << rat_str(sp.k) << " o=" << sp.orientation);
            const auto lead = psi_leading(sp);
            const auto ser = psi_series(sp, lead.q_exp + 2);
            REQUIRE(!ser.is_zero());
            REQUIRE(ser.min_q() == lead.q_exp);
            const ZPoly* row = ser.order(lead.q_exp);
            REQUIRE(row != nullptr);
            REQUIRE((*row - lead.coeff).is_zero());
        }
    }
    SECTION("boundary leading rows against the window") {
        const PsiSpec specs[] = {
            mk(3, 2, -1, h, 0, 0, 2, 0, +1),  // column only
            mk(3, 1, 0, h, 0, 0, 2, 0, +1),   // column only, s = 0
            mk(2, 1, 0, h, 0, 1, 0, 0, -1),   // merged monomial + column
            mk(2, 1, 0, 0, 0, 1, 0, 0, +1),   // stacked monomial + column
            mk(4, 3, -2, h, 0, 3, 0, 0, -1),  // monomial below the column
        };
        for (const auto& sp : specs) {
            INFO("M=" << sp.M << " m=" << rat_str(sp.m) << " s=" << rat_str(sp.s) << " j="
                      << rat_str(sp.j) << " k=" << rat_str(sp.k) << " o=" << sp.orientation);
            const auto lead = psi_leading(sp, 9);
            const auto w = psi_window(sp, lead.q_exp + 2, lead.coeff.min_exp());
            REQUIRE(!w.t.empty());
            const auto& [q0, row] = *w.t.begin();
            REQUIRE(q0 == lead.q_exp);
            REQUIRE((row - lead.coeff).is_zero());
        }
    }
}

TEST_CASE("swap symmetry at weight one and integer s") {
    const Rat h = rat(1, 2);
    SECTION("interior labels") {
        auto a = psi_series(mk(3, 1, 0, 0, 0, 1, 2, 0, +1), Rat(4));
        auto b = psi_series(mk(3, 1, 0, 0, 0, 2, 1, 0, -1), Rat(4));
        REQUIRE(ps_equal(a, b, Rat(4)));
        auto c = psi_series(mk(5, 1, -1, h, 0, 2, 3, 0, +1), Rat(4));
        auto d = psi_series(mk(5, 1, -1, h, 0, 3, 2, 0, -1), Rat(4));
        REQUIRE(ps_equal(c, d, Rat(4)));
    }
    SECTION("boundary labels") {
        auto a = psi_window(mk(3, 1, 0, h, 0, 1, 0, 0, +1), Rat(4), Rat(-12));
        auto b = psi_window(mk(3, 1, 0, h, 0, 0, 1, 0, -1), Rat(4), Rat(-12));
        REQUIRE(ws_equal(a, b, Rat(4), Rat(-12), Rat(8)));
    }
}

TEST_CASE("half-shift of the elliptic arguments flips the inner characteristic") {
    // With integer weight the 0- and 1/2-characteristic slices determine each
    // other under z -> z +- 1/2 up to the fixed phase e^{+- i pi (m/M)(k-j)}.
    const Rat h = rat(1, 2);
    std::mt19937 rng(0x51c3u);
    std::uniform_real_distribution<double> ur(-0.3, 0.3), ui(0.85, 1.5), uz(0.05, 0.3);
    const PsiSpec interior = mk(3, 1, -1, 0, 0, 1, 2, 0, +1);
    const PsiSpec interior2 = mk(3, 1, -1, 0, 0, 1, 2, 0, -1);
    const PsiSpec bnd1 = mk(3, 1, 0, 0, 0, 0, 2, 0, +1);
    const PsiSpec bnd2 = mk(2, 1, 0, 0, 0, 1, 0, 0, -1);
    for (const auto& sp0 : {interior, interior2, bnd1, bnd2}) {
        PsiSpec sph = sp0;
        sph.eps = h;
        const double mM = rat_double(sp0.m) / double(sp0.M);
        const double kj = rat_double(sp0.k - sp0.j);
        const cnum fwd = std::exp(cnum(0, 3.14159265358979323846 * mM * kj));
        for (int t = 0; t < 5; ++t) {
            const cnum tau(ur(rng), ui(rng));
            const cnum z(ur(rng), -uz(rng));
            const double half = 0.5 * sp0.orientation;
            INFO("M=" << sp0.M << " j=" << rat_str(sp0.j) << " k=" << rat_str(sp0.k)
                      << " o=" << sp0.orientation << " point " << t);
            const auto l1 = psi_numeric(sp0, tau, z + half);
            const auto r1 = psi_numeric(sph, tau, z);
            REQUIRE(std::abs(l1.value - fwd * r1.value) < 1e-9);
            const auto l2 = psi_numeric(sph, tau, z - half);
            const auto r2 = psi_numeric(sp0, tau, z);
            REQUIRE(std::abs(l2.value - r2.value / fwd) < 1e-9);
        }
    }
}

TEST_CASE("numeric evaluation against closed forms and the exact expansion") {
    const Rat h = rat(1, 2);
    SECTION("interior unit slices at the reference point") {
        const cnum tau(0, 1.3), z(0.23, 0.11);
        const cnum eta3 = std::pow(eta_numeric(tau), 3.0);
        const auto va = psi_numeric(mk(2, 1, 0, h, h, h, h, 0, +1), tau, z);
        CHECK(std::abs(va.value - eta3 / theta_ab_numeric(0, 0, tau, z)) < 1e-10);
        CHECK(va.bound < 1e-10);
        const auto vb = psi_numeric(mk(2, 1, 0, 0, h, h, h, 0, +1), tau, z);
        CHECK(std::abs(vb.value - eta3 / theta_ab_numeric(0, 1, tau, z)) < 1e-10);
    }
    SECTION("boundary unit slices in the lower z half-plane") {
        const cnum tau(0.1, 1.1), z(0.21, -0.17);
        const cnum eta3 = std::pow(eta_numeric(tau), 3.0);
        const auto va = psi_numeric(mk(2, 1, 0, h, 0, 1, 0, 0, +1), tau, z);
        CHECK(std::abs(va.value - eta3 / theta_ab_numeric(1, 0, tau, z)) < 1e-10);
        const auto vb = psi_numeric(mk(2, 1, 0, 0, 0, 1, 0, 0, +1), tau, z);
        CHECK(std::abs(vb.value - cnum(0, 1) * eta3 / theta_ab_numeric(1, 1, tau, z)) < 1e-10);
    }
    SECTION("partial sums of the exact expansion converge to the numeric value") {
        const PsiSpec sp = mk(3, 2, -1, 0, h, rat(3, 2), h, 0, +1);
        const cnum tau(0.1, 0.9), z(0.1, -0.2);
        const auto series = psi_series(sp, Rat(20));
        const auto direct = psi_numeric(sp, tau, z);
        CHECK(std::abs(eval_poly(series, tau, z) - direct.value) < 1e-8);
    }
    SECTION("numeric theta against an eta-quotient anchor") {
        const cnum tau(0, 1.1);
        const cnum lhs = theta_numeric({1, 1, 2, 0, 1, 0}, tau, cnum(0.4, 0.2));
        const cnum rhs = cnum(0, -1) * e2pi(-tau / 4.0) * std::pow(eta_numeric(tau), 2.0) /
                         eta_numeric(2.0 * tau);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}
