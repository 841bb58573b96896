#pragma once
// Characters of the N2 family as exact PolySeries.
//
// Each sector of the module (M, m, m2, k1, k2) is a product
//
//     ch = sign * Psi^{[M, m+1, -m2; eps]}_{j, k; eps'}(tau, z, -z, 0)
//               * theta_{1-2eps', 1-2eps}(tau, z) / eta(tau)^3
//
// with sign = (-1)^{m2} in the (+) sectors and +1 in the (-) sectors, and
//
//     untwisted:  (j, k) = (k1 + 1/2, k2 + 1/2),  eps' = 1/2
//     twisted:    (j, k) = (k1 + 1,   k2),        eps' = 0
//
// so theta is 00 / 01 / 10 / 11 for (+) / (-) / (+tw) / (-tw).  Untwisted
// and interior twisted labels use the PolySeries expansion of Psi directly;
// twisted labels with k2 = 0 carry a geometric zeta-tail, which the theta
// factor annihilates row by row, so the product is still an exact
// PolySeries (psi_finite_part / tail_mul_poly).

#include <algorithm>

#include "charq/labels.hpp"
#include "charq/psi.hpp"
#include "charq/theta.hpp"

namespace charq {

namespace detail {

// Psi parameters of one sector of an N2 label.
inline PsiSpec n2_psi_spec(const ModuleLabel& lab, const Sector& sec) {
    PsiSpec sp;
    sp.M = lab.M;
    sp.m = Rat(lab.m + 1);
    sp.s = Rat(-lab.m2);
    sp.eps = sec.plus ? rat(1, 2) : Rat(0);
    sp.epsp = sec.twisted ? Rat(0) : rat(1, 2);
    sp.j = sec.twisted ? Rat(lab.k1 + 1) : Rat(lab.k1) + rat(1, 2);
    sp.k = sec.twisted ? Rat(lab.k2) : Rat(lab.k2) + rat(1, 2);
    sp.branch = 0;
    sp.orientation = +1;
    return sp;
}

}  // namespace detail

inline PolySeries n2_character(const ModuleLabel& lab, const Sector& sec, const Rat& qmax) {
    lab.validate();
    if (lab.algebra != Algebra::N2)
        throw std::invalid_argument("n2_character: label must carry the N2 tag");
    const PsiSpec sp = detail::n2_psi_spec(lab, sec);
    sp.validate();

    // Build Psi deep enough that both products below stay certified through
    // qmax: the eta quotient costs 1/8, theta costs nothing (its lowest
    // order is 0 or 1/8).
    const Rat qpsi = qmax + 2;
    PolySeries psi;
    const bool split = sp.has_tail();
    if (split)
        psi = psi_finite_part(sp, qpsi);
    else
        psi = psi_series(sp, qpsi);

    const ThetaSpec th = theta_ab(sec.twisted ? 1 : 0, sec.plus ? 0 : 1);
    const Rat qprod = qmax + rat(1, 8);  // need this much before dividing by eta^3
    const Rat qtheta = qprod - std::min<Rat>(certified_min_q(psi), Rat(0));
    const PolySeries theta = theta_series(th, qtheta);

    PolySeries prod = ps_mul(psi, theta);
    if (split) prod = ps_add(prod, tail_mul_poly(psi_boundary_tail(sp), theta));

    const Rat qeta = qmax - std::min<Rat>(certified_min_q(prod), Rat(0));
    PolySeries ch = ps_mul_scalar_series(prod, eta_quotient({{1, -3}}, qeta));
    ch = ps_truncate(std::move(ch), qmax);
    if (sec.plus && lab.m2 % 2 != 0) ch = ps_scale(ch, -g_one);
    return ch;
}

}  // namespace charq
