#pragma once

// Cross-checks tying the three layers together: every theta sum against its
// infinite-product form, the eta sum against the raw Euler product, the
// half/full period shift anchors, the pair-product and square decompositions
// used downstream, and the reciprocal kernel against its defining product.
// Everything is exact coefficient comparison at a caller-chosen order.

#include "charq/check.hpp"
#include "charq/kernel.hpp"
#include "charq/theta.hpp"

#include <string>
#include <utility>
#include <vector>

namespace charq {

inline ScalarQSeries euler_product(const Rat& qmax) {
    // prod_{n>=1} (1 - q^n), multiplied out factor by factor
    ScalarQSeries acc = sq_one(qmax);
    for (long long n = 1; Rat(n) <= qmax; ++n) {
        ScalarQSeries f = sq_one(qmax);
        f.add_term(Rat(n), GaussRat(-1));
        acc = sq_mul(acc, f);
    }
    return acc;
}

// vartheta_{ab}(tau, z) assembled from its triple product instead of the
// lattice sum; independent oracle for theta_series.
inline PolySeries theta_product_form(int a, int b, const Rat& qmax) {
    if ((a != 0 && a != 1) || (b != 0 && b != 1))
        throw std::invalid_argument("theta characteristics must be 0 or 1");
    const GaussRat s = (b == 0) ? g_one : -g_one;
    auto binom = [&](const Rat& qe, const Rat& ze, const GaussRat& c) {
        PolySeries f = ps_zero(qmax);
        f.add_term(Rat(0), Rat(0), g_one);
        f.add_term(qe, ze, c);
        return f;
    };
    PolySeries acc = ps_from_scalar(euler_product(qmax));
    if (a == 0) {
        // (1 +- zeta q^{n-1/2})(1 +- zeta^{-1} q^{n-1/2})
        for (long long n = 1; rat(2 * n - 1, 2) <= qmax; ++n) {
            acc = ps_mul(acc, binom(rat(2 * n - 1, 2), Rat(1), s));
            acc = ps_mul(acc, binom(rat(2 * n - 1, 2), Rat(-1), s));
        }
        return acc;
    }
    // (1 +- zeta q^n)(1 +- zeta^{-1} q^n), prefactor q^{1/8}(zeta^{1/2} +- zeta^{-1/2}),
    // and an extra i when b = 1
    for (long long n = 1; Rat(n) <= qmax; ++n) {
        acc = ps_mul(acc, binom(Rat(n), Rat(1), s));
        acc = ps_mul(acc, binom(Rat(n), Rat(-1), s));
    }
    PolySeries pre = ps_zero(qmax);
    pre.add_term(Rat(0), rat(1, 2), b == 0 ? g_one : g_i);
    pre.add_term(Rat(0), rat(-1, 2), b == 0 ? g_one : -g_i);
    return ps_truncate(ps_shift(ps_mul(acc, pre), rat(1, 8), Rat(0)), qmax);
}

inline std::vector<CheckResult> verify_theta_identities(const Rat& qmax) {
    std::vector<CheckResult> out;
    const Rat Q = qmax;
    auto ps_check = [&](const std::string& name, const PolySeries& l, const PolySeries& r) {
        out.push_back(check_from(name, ps_compare(l, r, Q)));
    };

    // --- convention anchors -------------------------------------------------
    ps_check("theta11-half-period-anchor",
             theta_series({1, 1, Rat(1), Rat(1), Rat(0), rat(1, 2)}, Q),
             ps_scale(theta_series(theta_ab(1, 0), Q), GaussRat(-1)));
    ps_check("theta11-diagonal-anchor",
             theta_series({1, 1, Rat(2), Rat(0), Rat(1), Rat(0)}, Q),
             ps_from_scalar(sq_shift(
                 sq_scale(eta_quotient({{1, 2}, {2, -1}}, Q + rat(1, 4)), -g_i), rat(-1, 4))));

    // --- lattice sums vs triple products ------------------------------------
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            ps_check("theta" + std::to_string(a) + std::to_string(b) + "-product-form",
                     theta_series(theta_ab(a, b), Q), theta_product_form(a, b, Q));

    // --- eta vs raw Euler product -------------------------------------------
    const ScalarQSeries euler = euler_product(Q);
    ps_check("eta-pentagonal-vs-product", ps_from_scalar(eta_series(1, Q)),
             ps_from_scalar(sq_shift(euler, rat(1, 24))));
    ps_check("eta-cube-vs-product-cube", ps_from_scalar(eta_quotient({{1, 3}}, Q)),
             ps_from_scalar(sq_shift(sq_mul(sq_mul(euler, euler), euler), rat(1, 8))));

    // --- pair products at shifted arguments ---------------------------------
    {
        const ScalarQSeries eq8 = eta_quotient({{2, 2}, {1, -1}}, Q + rat(1, 8));
        ps_check("theta10-pair-half-tau-shift",
                 ps_mul(theta_series({1, 0, Rat(2), Rat(1), rat(1, 2), Rat(0)}, Q),
                        theta_series({1, 0, Rat(2), Rat(1), rat(-1, 2), Rat(0)}, Q)),
                 ps_shift(ps_mul_scalar_series(theta_series(theta_ab(0, 0), Q), eq8),
                          rat(-1, 8), Rat(0)));
        ps_check("theta11-pair-half-tau-shift",
                 ps_mul(theta_series({1, 1, Rat(2), Rat(1), rat(1, 2), Rat(0)}, Q),
                        theta_series({1, 1, Rat(2), Rat(1), rat(-1, 2), Rat(0)}, Q)),
                 ps_shift(ps_mul_scalar_series(theta_series(theta_ab(0, 1), Q), eq8),
                          rat(-1, 8), Rat(0)));
    }
    {
        const ScalarQSeries eq4 = eta_quotient({{2, 2}, {1, -1}}, Q + rat(1, 8));
        ps_check("theta10-pair-full-tau-shift",
                 ps_mul(theta_series({1, 0, Rat(2), Rat(1), Rat(1), Rat(0)}, Q + rat(1, 4)),
                        theta_series({1, 0, Rat(2), Rat(1), Rat(0), Rat(0)}, Q + rat(1, 4))),
                 ps_shift(ps_mul_scalar_series(theta_series(theta_ab(1, 0), Q + rat(1, 8)), eq4),
                          rat(-1, 4), rat(-1, 2)));
        ps_check("theta11-pair-full-tau-shift",
                 ps_mul(theta_series({1, 1, Rat(2), Rat(1), Rat(1), Rat(0)}, Q + rat(1, 4)),
                        theta_series({1, 1, Rat(2), Rat(1), Rat(0), Rat(0)}, Q + rat(1, 4))),
                 ps_scale(ps_shift(ps_mul_scalar_series(
                                       theta_series(theta_ab(1, 1), Q + rat(1, 8)), eq4),
                                   rat(-1, 4), rat(-1, 2)),
                          -g_i));
    }

    // --- squares against the two-column split -------------------------------
    {
        const ScalarQSeries A = eta_quotient({{2, 5}, {1, -2}, {4, -2}}, Q);
        const ScalarQSeries B2 = sq_scale(eta_quotient({{4, 2}, {2, -1}}, Q), GaussRat(2));
        const PolySeries Te = theta_series({0, 0, Rat(2), Rat(2), Rat(0), Rat(0)}, Q);
        const PolySeries To = theta_series({1, 0, Rat(2), Rat(2), Rat(0), Rat(0)}, Q);
        const PolySeries t00 = theta_series(theta_ab(0, 0), Q);
        const PolySeries t10 = theta_series(theta_ab(1, 0), Q);
        ps_check("theta00-square-split", ps_mul(t00, t00),
                 ps_add(ps_mul_scalar_series(Te, A), ps_mul_scalar_series(To, B2)));
        ps_check("theta10-square-split", ps_mul(t10, t10),
                 ps_add(ps_mul_scalar_series(Te, B2), ps_mul_scalar_series(To, A)));
    }

    // --- zeta parity ---------------------------------------------------------
    {
        const PolySeries t00 = theta_series(theta_ab(0, 0), Q);
        const PolySeries t01 = theta_series(theta_ab(0, 1), Q);
        const PolySeries t11 = theta_series(theta_ab(1, 1), Q);
        ps_check("theta00-even", t00, ps_flip_zeta(t00));
        ps_check("theta01-even", t01, ps_flip_zeta(t01));
        ps_check("theta11-odd", t11, ps_scale(ps_flip_zeta(t11), GaussRat(-1)));
    }

    // --- reciprocal kernel, on a trusted window ------------------------------
    {
        const Rat lo(-6), hi(6);
        const PolySeries t2z = theta_series({1, 1, Rat(1), Rat(2), Rat(0), Rat(0)}, Q + rat(1, 4));
        const ScalarQSeries e3 = eta_quotient({{1, 3}}, Q + rat(1, 8));
        const PolySeries p = ps_mul(ps_from_scalar(e3), t2z);  // min order 1/4
        const WindowSeries K = inverse_theta_kernel(Q - rat(1, 4), lo - p.max_zeta());
        PolySeries one = ps_zero(Q);
        one.add_term(Rat(0), Rat(0), g_one);
        out.push_back(check_from("kernel-times-eta3-theta11-2z-is-one",
                                 ws_compare(ws_mul_poly(K, p), ws_from_poly(one, lo), Q, lo, hi)));

        const WindowSeries K2 = inverse_theta_kernel(Q - rat(1, 8), lo - t2z.max_zeta());
        out.push_back(check_from(
            "kernel-times-theta11-2z-is-inverse-eta3",
            ws_compare(ws_mul_poly(K2, t2z),
                       ws_from_poly(ps_from_scalar(eta_quotient({{1, -3}}, Q)), lo), Q, lo, hi)));
    }

    return out;
}

}  // namespace charq
