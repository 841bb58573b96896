#pragma once
// Characters of the N4 family.  Each sector of a module (M, m, m2, k1, k2)
// with heart I or III is the quotient
//
//     ch = i * sign * Psi^{[M, m, -m2; eps]}_{j, k; eps'}(tau, z1, z2, 0)
//            * theta_{1-2eps', 1-2eps}(tau, z)^2 / (eta^3 * theta_11(tau, 2z)),
//
// sign = (-1)^{m2} in the (+) sectors, +1 in the (-) sectors, and
//
//     untwisted (eps' = 1/2):  (j, k) = (k1 + 1/2, k1 + k2 + 1/2),
//                              slice (z, -z) for heart I, (-z, z) for III;
//     twisted   (eps' = 0):    I:   (j, k) = (k1 + 1, k1 + k2),      (-z, z)
//                              III: (j, k) = (k1, k1 + k2 + 1),      (z, -z).
//
// Division by theta_11(tau, 2z) leaves the zeta-support unbounded below, so
// the result is a WindowSeries: the numerator Psi * theta^2 is an exact
// PolySeries (with the geometric-tail split when j or k vanishes, exactly as
// in the N2 case), and inverse_theta_kernel supplies 1/(eta^3 theta_11(2z))
// on a column window wide enough to certify every requested column.
//
// Hearts II and IV reduce to III and I by (k1, k2) -> (k1 - 1, k2).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "charq/check.hpp"
#include "charq/kernel.hpp"
#include "charq/labels.hpp"
#include "charq/n2.hpp"
#include "charq/psi.hpp"
#include "charq/theta.hpp"
#include "charq/window.hpp"

namespace charq {

namespace detail {

// Psi parameters of one sector of an N4 label with heart I or III.
inline PsiSpec n4_psi_spec(const ModuleLabel& lab, const Sector& sec) {
    if (lab.heart != Heart::I && lab.heart != Heart::III)
        throw std::invalid_argument("n4: normalize the heart before expanding");
    PsiSpec sp;
    sp.M = lab.M;
    sp.m = Rat(lab.m);
    sp.s = Rat(-lab.m2);
    sp.eps = sec.plus ? rat(1, 2) : Rat(0);
    sp.epsp = sec.twisted ? Rat(0) : rat(1, 2);
    if (!sec.twisted) {
        sp.j = Rat(lab.k1) + rat(1, 2);
        sp.k = Rat(lab.k1 + lab.k2) + rat(1, 2);
        sp.orientation = (lab.heart == Heart::I) ? +1 : -1;
    } else if (lab.heart == Heart::I) {
        sp.j = Rat(lab.k1 + 1);
        sp.k = Rat(lab.k1 + lab.k2);
        sp.orientation = -1;
    } else {
        sp.j = Rat(lab.k1);
        sp.k = Rat(lab.k1 + lab.k2 + 1);
        sp.orientation = +1;
    }
    sp.branch = 0;
    return sp;
}

// i * sign * Psi * theta_{ab}^2, exact through qmax: the character times
// eta^3 * theta_11(tau, 2z).  Boundary labels (j or k zero) split Psi into
// finite part plus geometric tail; the theta square kills the tail row by
// row, so the numerator is always an exact PolySeries.
inline PolySeries n4_numerator(const ModuleLabel& lab, const Sector& sec, const Rat& qmax) {
    const PsiSpec sp = n4_psi_spec(lab, sec);
    sp.validate();

    const bool split = sp.has_tail();
    PolySeries psi = split ? psi_finite_part(sp, qmax) : psi_series(sp, qmax);

    const ThetaSpec th = theta_ab(sec.twisted ? 1 : 0, sec.plus ? 0 : 1);
    const Rat qtheta = qmax - std::min<Rat>(certified_min_q(psi), Rat(0));
    const PolySeries theta = theta_series(th, qtheta);
    const PolySeries theta2 = ps_mul(theta, theta);

    PolySeries num = ps_mul(psi, theta2);
    if (split) num = ps_add(num, tail_mul_poly(psi_boundary_tail(sp), theta2));

    GaussRat c = g_i;
    if (sec.plus && lab.m2 % 2 != 0) c = -c;
    return ps_truncate(ps_scale(std::move(num), c), qmax);
}

}  // namespace detail

// The character as a window series: every column >= zeta_lo is exact
// through qmax, and z_top bounds the true support from above.  (Columns are
// unbounded below; zeta_lo only chooses how deep the window reaches.)
inline WindowSeries n4_character(const ModuleLabel& lab, const Sector& sec, const Rat& qmax,
                                 const Rat& zeta_lo) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("n4_character: label must carry the N4 tag");
    const ModuleLabel nl = normalize_heart(lab);

    // The kernel's lowest order is -1/4, so the numerator must be certified
    // a quarter-order deeper than the result.
    const PolySeries num = detail::n4_numerator(nl, sec, qmax + rat(1, 4));
    if (num.is_zero()) throw std::logic_error("n4_character: numerator vanished");
    const Rat qk = qmax - std::min<Rat>(certified_min_q(num), Rat(0));
    const WindowSeries kernel = inverse_theta_kernel(qk, zeta_lo - num.max_zeta());
    return ws_truncate(ws_mul_poly(kernel, num), qmax);
}

inline WindowSeries n4_character(const ModuleLabel& lab, const Sector& sec, const Rat& qmax) {
    return n4_character(lab, sec, qmax, Rat(-6));
}

// Shape of the lowest q-row.  The row sits at h - c/24 and is an infinite
// geometric column: writing w = 1/zeta and s for the calibrated charge,
//
//     untwisted:             zeta^s / (1 - w^2)          1, 0, 1, 0, ...
//     twisted, generic (+):  zeta^s (1 + w) / (1 - w)    1, 2, 2, 2, ...
//     twisted, generic (-): -zeta^s (1 - w) / (1 + w)   -1, 2,-2, 2, ...
//     twisted, degen.  (+):  zeta^{s-1} / (1 - w)        1, 1, 1, ...
//     twisted, degen.  (-):  zeta^{s-1} / (1 + w)        1,-1, 1, ...
//
// The twisted row degenerates exactly when the slope-zero column of Psi
// carries the lowest order: heart III with k1 = 0 (any m2), or heart I with
// (k1, k2) = (0, 0) and m2 = 0.
struct N4Leading {
    Rat q_exp;     // h - c/24
    Rat zeta_top;  // exponent of the highest nonzero cell
    bool degenerate{false};
};

inline N4Leading n4_leading(const ModuleLabel& lab, const Sector& sec) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("n4_leading: label must carry the N4 tag");
    const ModuleLabel nl = normalize_heart(lab);
    const ConformalData cd = conformal_data(nl, sec);
    N4Leading out;
    out.q_exp = cd.h - cd.c / 24;
    out.degenerate = sec.twisted &&
                     ((nl.heart == Heart::III && nl.k1 == 0) ||
                      (nl.heart == Heart::I && nl.k1 == 0 && nl.k2 == 0 && nl.m2 == 0));
    out.zeta_top = out.degenerate ? Rat(cd.s - 1) : cd.s;
    return out;
}

// The predicted lowest row written out down to zeta^zmin.
inline std::pair<Rat, ZPoly> n4_leading_row(const ModuleLabel& lab, const Sector& sec,
                                            const Rat& zmin) {
    const N4Leading lead = n4_leading(lab, sec);
    const Rat& top = lead.zeta_top;
    ZPoly row;
    if (!sec.twisted) {
        for (Rat ze = top; ze >= zmin; ze -= 2) row.add_term(ze, g_one);
    } else if (!lead.degenerate) {
        const GaussRat head = sec.plus ? g_one : -g_one;
        row.add_term(top, head);
        GaussRat cell = head;
        for (Rat ze = top - 1; ze >= zmin; ze -= 1) {
            if (!sec.plus) cell = -cell;
            row.add_term(ze, cell * GaussRat(2));
        }
    } else {
        GaussRat cell = -g_one;
        for (Rat ze = top; ze >= zmin; ze -= 1) {
            cell = sec.plus ? g_one : -cell;
            row.add_term(ze, cell);
        }
    }
    return {lead.q_exp, std::move(row)};
}

// The quotient-to-N2 dictionary, checked exactly in cross-multiplied form:
//
//     ch^{N4} * theta_11(tau, 2z) = sign * ch^{N2}(tau, +-z) * theta_ab(tau, z)
//
// where the N2 module is (M, m-1, m2, k1, k1+k2).  The left side is the
// exact numerator divided by eta^3, so no window enters and the comparison
// is between finite PolySeries.  Heart I carries all four sectors; heart III
// the untwisted two.  z is reflected on heart III and on the twisted rows;
// sign is +i except for (-tw), which carries -i.
struct RelationReport {
    ModuleLabel label;  // normalized
    std::vector<CheckResult> rows;
    bool pass() const { return all_pass(rows); }
};

inline RelationReport n2n4_relation_check(const ModuleLabel& lab, const Rat& qmax) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("n2n4_relation_check: label must carry the N4 tag");
    RelationReport rep;
    rep.label = normalize_heart(lab);
    const ModuleLabel& nl = rep.label;

    ModuleLabel n2lab;
    n2lab.M = nl.M;
    n2lab.m = nl.m - 1;
    n2lab.m2 = nl.m2;
    n2lab.k1 = nl.k1;
    n2lab.k2 = nl.k1 + nl.k2;
    n2lab.algebra = Algebra::N2;
    n2lab.validate();

    std::vector<Sector> sectors = {{true, false}, {false, false}};
    if (nl.heart == Heart::I) {
        sectors.push_back({true, true});
        sectors.push_back({false, true});
    }

    for (const Sector& sec : sectors) {
        const PolySeries num = detail::n4_numerator(nl, sec, qmax + rat(1, 8));
        const Rat qeta = qmax - std::min<Rat>(certified_min_q(num), Rat(0));
        const PolySeries lhs =
            ps_truncate(ps_mul_scalar_series(num, eta_quotient({{1, -3}}, qeta)), qmax);

        PolySeries ch2 = n2_character(n2lab, sec, qmax);
        if (nl.heart == Heart::III || sec.twisted) ch2 = ps_flip_zeta(ch2);
        const ThetaSpec th = theta_ab(sec.twisted ? 1 : 0, sec.plus ? 0 : 1);
        const Rat qth = qmax - std::min<Rat>(certified_min_q(ch2), Rat(0));
        PolySeries rhs = ps_mul(ch2, theta_series(th, qth));
        const GaussRat sign = (sec.twisted && !sec.plus) ? -g_i : g_i;
        rhs = ps_truncate(ps_scale(std::move(rhs), sign), qmax);

        const std::string name = std::string(heart_str(nl.heart)) + "(" + sector_str(sec) + ")";
        rep.rows.push_back(check_from(name, ps_compare(lhs, rhs, qmax)));
    }
    return rep;
}

}  // namespace charq
