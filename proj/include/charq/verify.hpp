#pragma once
// Named verification suites.  Each suite re-derives one family of identities
// and returns ordered CheckResult rows; run_verification() drives a filtered
// list of suites and junit_xml() serializes the outcome for CI.  Row order is
// the enumeration order below and nothing else, so reports are byte-stable.
//
// Suites accept a SuiteOptions whose unset fields fall back to per-suite
// defaults (the orders/windows each statement is pinned at); an explicit
// qmax/window deepens or shrinks every comparison of that suite coherently.

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "charq/modular.hpp"
#include "charq/strings.hpp"
#include "charq/theta_checks.hpp"

namespace charq {

struct SuiteOptions {
    std::optional<Rat> qmax;
    std::optional<long long> window;
    std::optional<double> tol;
    std::optional<int> points;  // seeded points per numeric family
    long long seed{0};          // skip count into the seeded point stream
};

namespace detail {

inline Rat opt_q(const SuiteOptions& o, long long dflt) {
    return o.qmax ? *o.qmax : Rat(dflt);
}
inline Rat opt_w(const SuiteOptions& o, long long dflt) {
    return Rat(o.window ? *o.window : dflt);
}

inline std::string label_str(const ModuleLabel& l, const Sector& sec) {
    return std::string(heart_str(l.heart)) + "(" + std::to_string(l.M) + "," +
           std::to_string(l.m) + "," + std::to_string(l.m2) + "," + std::to_string(l.k1) + "," +
           std::to_string(l.k2) + ")" + sector_str(sec);
}

// Admissible quotient-family labels with hearts I and III, every m2.
inline std::vector<ModuleLabel> admissible_labels(long long Mmax, long long mmax) {
    std::vector<ModuleLabel> out;
    for (long long M = 2; M <= Mmax; ++M)
        for (long long m = 1; m <= mmax; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (Heart h : {Heart::I, Heart::III})
                for (auto& [k1, k2] : omega_domain(M, h))
                    for (long long m2 = 0; m2 <= m - 1; ++m2) {
                        ModuleLabel lab;
                        lab.M = M;
                        lab.m = m;
                        lab.m2 = m2;
                        lab.k1 = k1;
                        lab.k2 = k2;
                        lab.heart = h;
                        lab.algebra = Algebra::N4;
                        out.push_back(lab);
                    }
        }
    return out;
}

inline const std::vector<Sector>& all_sectors() {
    static const std::vector<Sector> s = {
        {true, false}, {false, false}, {true, true}, {false, true}};
    return s;
}

// Direct cell-by-cell oracle for the double sums: enumerate every lattice
// point of both row families inside the budget, with no row analysis, no
// stopping rules, no tail bookkeeping.  The region split is the tabulated
// one -- added rows pair with n >= 0, subtracted rows with n < 0, family 1
// splits at l = 0, family 2 at l = 1 -- except that a slope-zero row (l = 0
// with j = 0 in family 1, resp. k = 0 in family 2) sits in the added half
// exactly when orientation = -1.  |l| <= 40 closes every case here: a row
// needs M m (|l|-1)^2 <= qmax + |n+s| max-slope to reach the window, and the
// zeta cut keeps |n+s| small.
inline WindowSeries psi_cell_oracle(const PsiSpec& sp, const Rat& qmax, const Rat& zfloor,
                                    const Rat& zcap) {
    const Rat p0 = sp.m / Rat(sp.M) * (sp.k - sp.j);
    const Rat o(sp.orientation);
    // o * ((n+s) + p0) in [zfloor, zcap]  <=>  n in an explicit integer range
    const Rat ulo = (sp.orientation == 1 ? zfloor : -zcap) - sp.s - p0;
    const Rat uhi = (sp.orientation == 1 ? zcap : -zfloor) - sp.s - p0;

    long long lo1 = 0, lo2 = 1;  // lowest added row per family
    if (sp.j == 0 && sp.orientation == +1) lo1 = 1;
    if (sp.k == 0 && sp.orientation == -1) lo2 = 0;

    WindowSeries ref;
    ref.qmax = qmax;
    ref.t_lo = zfloor;
    ref.z_top = zfloor;
    for (int b : {1, 2}) {
        const Rat sj = (b == 1) ? sp.j : Rat(-sp.j);
        const Rat sk = (b == 1) ? sp.k : Rat(-sp.k);
        const long long lo_add = (b == 1) ? lo1 : lo2;
        const GaussRat fam = (b == 1) ? g_one : -g_one;
        for (long long l = -40; l <= 40; ++l) {
            const Rat base = Rat(sp.M) * sp.m * (Rat(l) + sj / sp.M) * (Rat(l) + sk / sp.M);
            const Rat slope = Rat(sp.M * l) + ((b == 1) ? sp.j : Rat(-sp.k));
            for (long long n = ceil_ll(ulo); n <= floor_ll(uhi); ++n) {
                const int sgn = (l >= lo_add && n >= 0) ? 1 : (l < lo_add && n < 0) ? -1 : 0;
                if (sgn == 0) continue;
                const Rat E = Rat(base + (Rat(n) + sp.s) * slope);
                if (E > qmax) continue;
                const Rat zE = Rat(o * (Rat(n) + sp.s + p0));
                ref.add_term(E, zE, fam * GaussRat(sgn) * quarter_phase((Rat(n) + sp.s) * sp.eps));
                if (zE > ref.z_top) ref.z_top = zE;
            }
        }
    }
    ref.prune();
    return ref;
}

}  // namespace detail

// -- convention anchors, products, squares, parity, kernel rows ------------
inline std::vector<CheckResult> suite_theta_anchors(const SuiteOptions& o) {
    return verify_theta_identities(detail::opt_q(o, 8));
}

// -- the reciprocal kernel alone, cross-multiplied both ways ---------------
inline std::vector<CheckResult> suite_kernel(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 6), W = detail::opt_w(o, 6);
    const Rat lo = -W;
    std::vector<CheckResult> out;

    const PolySeries t2z = theta_series({1, 1, Rat(1), Rat(2), Rat(0), Rat(0)}, Q + rat(1, 4));
    const PolySeries p =
        ps_mul(ps_from_scalar(eta_quotient({{1, 3}}, Q + rat(1, 8))), t2z);  // min order 1/4
    const WindowSeries K = inverse_theta_kernel(Q - rat(1, 4), lo - p.max_zeta());
    PolySeries one = ps_zero(Q);
    one.add_term(Rat(0), Rat(0), g_one);
    out.push_back(check_from("kernel-times-eta3-theta11-2z-is-one",
                             ws_compare(ws_mul_poly(K, p), ws_from_poly(one, lo), Q, lo, W)));

    const WindowSeries K2 = inverse_theta_kernel(Q - rat(1, 8), lo - t2z.max_zeta());
    out.push_back(check_from(
        "kernel-times-theta11-2z-is-inverse-eta3",
        ws_compare(ws_mul_poly(K2, t2z),
                   ws_from_poly(ps_from_scalar(eta_quotient({{1, -3}}, Q)), lo), Q, lo, W)));
    return out;
}

// -- the four level-(2,1) slices against eta/theta quotients ---------------
inline std::vector<CheckResult> suite_psi_closed_forms(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 6), QB = Q + rat(1, 8);
    const Rat h = rat(1, 2);
    const PolySeries eta3 = ps_from_scalar(eta_quotient({{1, 3}}, QB));
    std::vector<CheckResult> out;

    const PolySeries a = psi_series(PsiSpec{2, Rat(1), Rat(0), h, h, h, h, 0, +1}, QB);
    out.push_back(check_from(
        "psi-closed-00",
        ps_compare(ps_mul(a, theta_series(theta_ab(0, 0), QB)), eta3, Q)));
    const PolySeries b = psi_series(PsiSpec{2, Rat(1), Rat(0), Rat(0), h, h, h, 0, +1}, QB);
    out.push_back(check_from(
        "psi-closed-01",
        ps_compare(ps_mul(b, theta_series(theta_ab(0, 1), QB)), eta3, Q)));

    // boundary slices carry a zeta-tail; cross-multiply on a window
    const Rat lo(-8), hi(8);
    {
        const PolySeries t10 = theta_series(theta_ab(1, 0), QB);
        const WindowSeries W =
            psi_window(PsiSpec{2, Rat(1), Rat(0), h, Rat(0), Rat(1), Rat(0), 0, +1}, Q,
                       lo - t10.max_zeta());
        out.push_back(check_from(
            "psi-closed-10",
            ws_compare(ws_mul_poly(W, t10), ws_from_poly(eta3, lo), Q, lo, hi)));
    }
    {
        const PolySeries t11 = theta_series(theta_ab(1, 1), QB);
        const WindowSeries W =
            psi_window(PsiSpec{2, Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), 0, +1}, Q,
                       lo - t11.max_zeta());
        out.push_back(check_from(
            "psi-closed-11", ws_compare(ws_mul_poly(W, t11),
                                        ws_from_poly(ps_scale(eta3, g_i), lo), Q, lo, hi)));
    }
    return out;
}

// -- every character-relevant spec against the cell oracle -----------------
inline std::vector<CheckResult> suite_psi_oracle(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 6);
    const Rat zfloor(-16), zcap(10), hi(8);

    // collect the specs both character families touch, deduplicated
    std::vector<PsiSpec> specs;
    std::set<std::string> seen;
    auto push = [&](const PsiSpec& sp) {
        const std::string key = std::to_string(sp.M) + "|" + rat_str(sp.m) + "|" +
                                rat_str(sp.s) + "|" + rat_str(sp.eps) + "|" + rat_str(sp.epsp) +
                                "|" + rat_str(sp.j) + "|" + rat_str(sp.k) + "|" +
                                std::to_string(sp.orientation);
        if (seen.insert(key).second) specs.push_back(sp);
    };
    for (const ModuleLabel& lab : detail::admissible_labels(5, 3))
        for (const Sector& sec : detail::all_sectors()) push(detail::n4_psi_spec(lab, sec));
    for (long long M = 2; M <= 5; ++M)
        for (long long m = 0; m + 1 <= 3; ++m) {
            if (std::gcd(M, m + 1) != 1) continue;
            for (long long m2 = 0; m2 <= m; ++m2)
                for (long long k1 = 0; k1 <= M - 1; ++k1)
                    for (long long k2 = 0; k1 + k2 <= M - 1; ++k2)
                        for (const Sector& sec : detail::all_sectors()) {
                            ModuleLabel lab;
                            lab.M = M;
                            lab.m = m;
                            lab.m2 = m2;
                            lab.k1 = k1;
                            lab.k2 = k2;
                            lab.algebra = Algebra::N2;
                            push(detail::n2_psi_spec(lab, sec));
                        }
        }

    std::vector<CheckResult> out;
    for (const PsiSpec& sp : specs) {
        const std::string name = "psi M" + std::to_string(sp.M) + " m=" + rat_str(sp.m) +
                                 " s=" + rat_str(sp.s) + " e=" + rat_str(sp.eps) + "," +
                                 rat_str(sp.epsp) + " (" + rat_str(sp.j) + "," + rat_str(sp.k) +
                                 ") o=" + (sp.orientation == 1 ? "+" : "-");
        const WindowSeries mine = psi_window(sp, Q, zfloor);
        const WindowSeries ref = detail::psi_cell_oracle(sp, Q, zfloor, zcap);
        out.push_back(check_from(name, ws_compare(mine, ref, Q, zfloor, hi)));
    }
    return out;
}

// -- lowest rows of the characters against the weight formulas -------------
inline std::vector<CheckResult> suite_leading_terms(const SuiteOptions& o) {
    const Rat depth = detail::opt_w(o, 7);
    std::vector<CheckResult> out;
    for (const ModuleLabel& lab : detail::admissible_labels(5, 3))
        for (const Sector& sec : detail::all_sectors()) {
            const N4Leading lead = n4_leading(lab, sec);
            const Rat zmin = lead.zeta_top - depth;

            WindowSeries pred;
            pred.qmax = lead.q_exp;
            pred.t_lo = zmin;
            pred.z_top = lead.zeta_top;
            const auto [q0, row] = n4_leading_row(lab, sec, zmin);
            for (auto& [ze, c] : row.terms()) pred.add_term(q0, ze, c);

            const WindowSeries W = n4_character(lab, sec, q0, zmin);
            out.push_back(check_from("leading " + detail::label_str(lab, sec),
                                     ws_compare(W, pred, q0, zmin, lead.zeta_top + 2)));
        }
    return out;
}

// -- quotient characters written through the companion family --------------
inline std::vector<CheckResult> suite_n2n4_relation(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 6);
    std::vector<CheckResult> out;
    for (const ModuleLabel& lab : detail::admissible_labels(4, 3)) {
        const RelationReport rep = n2n4_relation_check(lab, Q);
        for (const CheckResult& r : rep.rows)
            out.push_back({"relation " + detail::label_str(lab, {true, false}) + " row " + r.name,
                           r.pass, r.detail});
    }
    return out;
}

// -- multiple-sum path vs kernel path, and the reading adjudications -------
inline std::vector<CheckResult> suite_two_path(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 6), W = detail::opt_w(o, 5);
    const Rat lo = -W, hi = W;
    std::vector<CheckResult> out;
    for (const ModuleLabel& lab : detail::admissible_labels(4, 2))
        for (bool tw : {false, true}) {
            const Sector sec{true, tw};
            const WindowSeries s = n4_string_expansion(lab, sec, Q, lo, hi);
            const WindowSeries kr = n4_character(lab, sec, Q, lo);
            out.push_back(check_from("two-path " + detail::label_str(lab, sec),
                                     ws_compare(s, kr, Q, lo, hi)));
        }
    // each textual reading must hold in its corrected form AND fail in the
    // printed alternative; both facts are rows here
    for (const ReadingCase& rc : adjudicate_sum_readings()) {
        out.push_back({"reading [" + rc.quantity + "] = " + rc.corrected,
                       rc.corrected_check.pass, rc.corrected_check.detail});
        out.push_back({"reading [" + rc.quantity + "] rules out " + rc.printed,
                       !rc.printed_check.pass,
                       rc.printed_check.pass ? "alternative reading also passes"
                                             : rc.printed_check.detail});
    }
    return out;
}

// -- the M = 2 module: theta ratios and bare triple sums -------------------
inline std::vector<CheckResult> suite_m2_specials(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 8), W = detail::opt_w(o, 6);
    const Rat lo = -W;
    ModuleLabel lab;
    lab.M = 2;
    lab.m = 1;
    lab.algebra = Algebra::N4;

    std::vector<CheckResult> out;
    // ch = sign * theta_ab / theta_11(2z); the (-)tw slice flips the odd
    // theta, so its sign is +1 where the others carry i
    struct Ratio {
        Sector sec;
        int a, b;
        GaussRat sign;
    };
    const Ratio ratios[] = {{{true, false}, 0, 0, g_i},
                            {{false, false}, 0, 1, g_i},
                            {{true, true}, 1, 0, g_i},
                            {{false, true}, 1, 1, g_one}};
    for (const Ratio& r : ratios) {
        const PolySeries p =
            ps_mul_scalar_series(theta_series(theta_ab(r.a, r.b), Q + rat(1, 8)),
                                 eta_quotient({{1, 3}}, Q + rat(1, 8)));  // min order >= 1/8
        const WindowSeries rhs = ws_scale(
            ws_truncate(ws_mul_poly(inverse_theta_kernel(Q, lo - p.max_zeta()), p), Q), r.sign);
        const WindowSeries ch = n4_character(lab, r.sec, Q, lo);
        out.push_back(check_from(std::string("ratio ") + sector_str(r.sec),
                                 ws_compare(ch, rhs, Q, lo, W)));
    }
    for (bool tw : {false, true}) {
        const Sector sec{true, tw};
        const WindowSeries s = m2_triple_expansion(sec, Q, lo, W);
        const WindowSeries kr = n4_character(lab, sec, Q, lo);
        out.push_back(check_from(std::string("triple-sum ") + sector_str(sec),
                                 ws_compare(s, kr, Q, lo, W)));
    }
    return out;
}

// -- the constant characters of the (2,0) companion module -----------------
inline std::vector<CheckResult> suite_n2_special_values(const SuiteOptions& o) {
    const Rat Q = detail::opt_q(o, 8);
    ModuleLabel lab;
    lab.M = 2;
    lab.m = 0;
    lab.algebra = Algebra::N2;

    std::vector<CheckResult> out;
    for (const Sector& sec : detail::all_sectors()) {
        PolySeries want = ps_zero(Q);
        want.add_term(Rat(0), Rat(0), (sec.twisted && !sec.plus) ? g_i : g_one);
        out.push_back(check_from(std::string("n2(2,0) ") + sector_str(sec),
                                 ps_compare(n2_character(lab, sec, Q), want, Q)));
    }
    return out;
}

// -- numeric transformation laws at seeded points ---------------------------
inline std::vector<CheckResult> suite_modular(const SuiteOptions& o) {
    const double stol = o.tol ? *o.tol : 1e-8;
    const double atol = o.tol ? *o.tol : 1e-9;
    const int npts = o.points ? *o.points : 3;
    const int apts = o.points ? *o.points : 5;
    const int need = std::max(npts, apts) + int(o.seed);
    const std::vector<EvalPoint> pts = seeded_points(std::size_t(need));

    std::vector<ModuleLabel> labels;
    for (long long M : {2, 3})
        for (Heart h : {Heart::I, Heart::III})
            for (auto& [k1, k2] : omega_domain(M, h)) {
                ModuleLabel lab;
                lab.M = M;
                lab.m = 1;
                lab.m2 = 0;
                lab.k1 = k1;
                lab.k2 = k2;
                lab.heart = h;
                lab.algebra = Algebra::N4;
                labels.push_back(lab);
            }

    std::vector<CheckResult> out;
    for (int i = 0; i < npts; ++i) {
        const EvalPoint& p = pts.at(std::size_t(i + o.seed));
        for (const ModuleLabel& lab : labels)
            for (const Sector& sec : detail::all_sectors()) {
                CheckResult s = check_from(s_check(lab, sec, p.tau, p.z, stol));
                s.name += " @p" + std::to_string(i);
                out.push_back(std::move(s));
                CheckResult t = check_from(t_check(lab, sec, p.tau, p.z, stol));
                t.name += " @p" + std::to_string(i);
                out.push_back(std::move(t));
            }
    }
    for (int i = 0; i < apts; ++i) {
        const EvalPoint& p = pts.at(std::size_t(i + o.seed));
        for (const NumericCheck& c : aux_modular_checks(p.tau, p.z, atol)) {
            CheckResult r = check_from(c);
            r.name += " @p" + std::to_string(i);
            out.push_back(std::move(r));
        }
    }
    return out;
}

// -- heart equivalences and weight ordering in the closed data -------------
inline std::vector<CheckResult> suite_conformal(const SuiteOptions& o) {
    const long long Mmax = o.window ? *o.window : 6;  // grid bound, not a zeta window
    std::vector<CheckResult> out;

    auto cd_str = [](const ConformalData& d) {
        return "(" + rat_str(d.c) + "," + rat_str(d.h) + "," + rat_str(d.s) + ")";
    };
    auto same = [&](const ModuleLabel& a, const ModuleLabel& b, const Sector& sec,
                    const std::string& name) {
        const ConformalData ra = conformal_data_raw(a, sec), rb = conformal_data_raw(b, sec);
        const ConformalData ca = conformal_data(a, sec), cb = conformal_data(b, sec);
        const bool ok = ra.c == rb.c && ra.h == rb.h && ra.s == rb.s && ca.c == cb.c &&
                        ca.h == cb.h && ca.s == cb.s;
        out.push_back({name, ok,
                       ok ? "" : cd_str(ra) + " vs " + cd_str(rb) + "; calibrated " +
                                     cd_str(ca) + " vs " + cd_str(cb)});
    };

    for (long long M = 2; M <= Mmax; ++M)
        for (long long m = 1; m <= 3; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (long long m2 = 0; m2 <= m - 1; ++m2)
                for (bool tw : {false, true}) {
                    const Sector sec{true, tw};
                    for (Heart h : {Heart::I, Heart::III})
                        for (auto& [k1, k2] : omega_domain(M, h)) {
                            ModuleLabel a;
                            a.M = M;
                            a.m = m;
                            a.m2 = m2;
                            a.k1 = k1;
                            a.k2 = k2;
                            a.heart = h;
                            a.algebra = Algebra::N4;
                            ModuleLabel b = a;
                            b.k1 = k1 + 1;
                            b.heart = (h == Heart::I) ? Heart::IV : Heart::II;
                            same(a, b, sec,
                                 "equiv " + detail::label_str(a, sec) + " = " +
                                     std::string(heart_str(b.heart)) + "(k1+1)");
                        }
                }
        }

    // raising m2 lowers the weight; the twisted heart-III weight is flat in
    // m2 exactly on the k1 = 0 wall
    for (long long M = 2; M <= Mmax; ++M)
        for (long long m = 2; m <= 3; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (long long m2 = 0; m2 + 1 <= m - 1; ++m2)
                for (Heart h : {Heart::I, Heart::III})
                    for (auto& [k1, k2] : omega_domain(M, h))
                        for (bool tw : {false, true}) {
                            ModuleLabel a;
                            a.M = M;
                            a.m = m;
                            a.m2 = m2;
                            a.k1 = k1;
                            a.k2 = k2;
                            a.heart = h;
                            a.algebra = Algebra::N4;
                            ModuleLabel b = a;
                            b.m2 = m2 + 1;
                            const Sector sec{true, tw};
                            const Rat ha = conformal_data_raw(a, sec).h;
                            const Rat hb = conformal_data_raw(b, sec).h;
                            const bool flat = tw && h == Heart::III && k1 == 0;
                            const bool ok = flat ? (ha == hb) : (ha > hb);
                            out.push_back(
                                {"h-order " + detail::label_str(a, sec) + " m2+1",
                                 ok,
                                 ok ? "" : "h(m2)=" + rat_str(ha) + " h(m2+1)=" + rat_str(hb) +
                                               (flat ? " expected equal" : " expected strict drop")});
                        }
        }
    return out;
}

// ---------------------------------------------------------------------------

struct SuiteReport {
    std::string name;
    std::vector<CheckResult> rows;
    bool pass() const { return all_pass(rows); }
};

struct SuiteEntry {
    const char* name;
    const char* what;
    std::vector<CheckResult> (*run)(const SuiteOptions&);
};

inline const std::vector<SuiteEntry>& verification_suites() {
    static const std::vector<SuiteEntry> reg = {
        {"theta-anchors", "theta/eta convention anchors, product forms, squares, parity",
         suite_theta_anchors},
        {"kernel", "reciprocal kernel 1/(eta^3 theta_11(2z)) cross-multiplied on a window",
         suite_kernel},
        {"psi-closed-forms", "level-(2,1) slices against eta/theta quotients",
         suite_psi_closed_forms},
        {"psi-oracle", "every character-relevant spec vs direct cell enumeration",
         suite_psi_oracle},
        {"leading-terms", "lowest character rows vs the closed weight/charge data",
         suite_leading_terms},
        {"n2n4-relation", "quotient characters written through the companion family",
         suite_n2n4_relation},
        {"two-path", "multiple-sum expansions vs the kernel path, with reading adjudication",
         suite_two_path},
        {"m2-specials", "M = 2 theta-ratio forms and bare triple sums", suite_m2_specials},
        {"n2-special-values", "constant characters of the (2,0) companion module",
         suite_n2_special_values},
        {"modular", "numeric S/T laws and auxiliary transformation identities", suite_modular},
        {"conformal", "heart equivalences and weight ordering", suite_conformal},
    };
    return reg;
}

// Run the named suites (empty filter or "all" = everything) in registry
// order regardless of how the filter lists them.
inline std::vector<SuiteReport> run_verification(const std::vector<std::string>& filter,
                                                 const SuiteOptions& opts) {
    const auto& reg = verification_suites();
    std::set<std::string> want(filter.begin(), filter.end());
    const bool everything = want.empty() || want.count("all");
    want.erase("all");
    for (const std::string& w : want) {
        bool known = false;
        for (const SuiteEntry& e : reg) known |= (w == e.name);
        if (!known) throw std::invalid_argument("unknown suite \"" + w + "\"");
    }
    std::vector<SuiteReport> out;
    for (const SuiteEntry& e : reg)
        if (everything || want.count(e.name)) out.push_back({e.name, e.run(opts)});
    return out;
}

inline std::string xml_escape(const std::string& s) {
    std::string r;
    r.reserve(s.size());
    for (char c : s) switch (c) {
            case '&': r += "&amp;"; break;
            case '<': r += "&lt;"; break;
            case '>': r += "&gt;"; break;
            case '"': r += "&quot;"; break;
            default: r += c;
        }
    return r;
}

// JUnit-style document; no timestamps or durations, so a fixed configuration
// yields identical bytes.
inline std::string junit_xml(const std::vector<SuiteReport>& reps) {
    std::size_t total = 0, failed = 0;
    for (const SuiteReport& r : reps) {
        total += r.rows.size();
        for (const CheckResult& c : r.rows) failed += c.pass ? 0 : 1;
    }
    std::string x = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    x += "<testsuites tests=\"" + std::to_string(total) + "\" failures=\"" +
         std::to_string(failed) + "\">\n";
    for (const SuiteReport& r : reps) {
        std::size_t f = 0;
        for (const CheckResult& c : r.rows) f += c.pass ? 0 : 1;
        x += "  <testsuite name=\"" + xml_escape(r.name) + "\" tests=\"" +
             std::to_string(r.rows.size()) + "\" failures=\"" + std::to_string(f) + "\">\n";
        for (const CheckResult& c : r.rows) {
            x += "    <testcase classname=\"" + xml_escape(r.name) + "\" name=\"" +
                 xml_escape(c.name) + "\"";
            if (c.pass)
                x += "/>\n";
            else
                x += ">\n      <failure message=\"" + xml_escape(c.detail) +
                     "\"/>\n    </testcase>\n";
        }
        x += "  </testsuite>\n";
    }
    x += "</testsuites>\n";
    return x;
}

}  // namespace charq
