#pragma once

// The reciprocal 1/(eta^3 vartheta_11(tau, 2z)) expanded in the |zeta| > 1
// domain, where it equals (-i/eta^6) * B with the double-sum bracket
//
//     B = [sum_{j,k>=0} - sum_{j,k<0}] (-1)^j zeta^{-(2k+1)} q^{j(j+1)/2 + jk}.
//
// Substituting (j,k) -> (-1-j, -1-k) in the subtracted block turns it into
// +(-1)^j zeta^{+(2k+1)} q^{j(j+1)/2 + (1+j)(1+k)} over j,k >= 0, so B has a
// genuinely infinite tail of negative zeta-columns at every q-order (the j=0
// row alone spreads zeta^{-1}, zeta^{-3}, ... across order 0) but only
// finitely many positive columns per order.  Lowest order:
// -i q^{-1/4} zeta^{-1}/(1 - zeta^{-2}).

#include "charq/theta.hpp"
#include "charq/window.hpp"

#include <stdexcept>

namespace charq {

// The bracket B through `qmax`, stored for zeta-columns >= zeta_lo.
inline WindowSeries kernel_bracket(const Rat& qmax, const Rat& zeta_lo) {
    WindowSeries w;
    w.qmax = qmax;
    w.t_lo = zeta_lo;
    // positive columns zeta^{2k+1} first appear at order k+1, so columns
    // above 2*floor(qmax)-1 are exactly zero through qmax
    const Rat kp = qmax - 1;
    w.z_top = (kp < 0) ? Rat(-1) : Rat(2 * rat_floor(kp) + 1);
    for (long long k = 0; rat(-(2 * k + 1)) >= zeta_lo; ++k)
        for (long long j = 0;; ++j) {
            const Rat E = rat(j * (j + 1), 2) + rat(j * k);
            if (E > qmax) break;
            w.add_term(E, rat(-(2 * k + 1)), GaussRat(parity_sign(j)));
        }
    for (long long k = 0; Rat(k + 1) <= qmax; ++k)
        for (long long j = 0;; ++j) {
            const Rat E = rat(j * (j + 1), 2) + rat((1 + j) * (1 + k));
            if (E > qmax) break;
            w.add_term(E, rat(2 * k + 1), GaussRat(parity_sign(j)));
        }
    return w;
}

// 1/(eta^3 vartheta_11(tau, 2z)) through `qmax` on columns >= zeta_lo.
inline WindowSeries inverse_theta_kernel(const Rat& qmax, const Rat& zeta_lo) {
    if (zeta_lo > -1) throw std::invalid_argument("kernel window must reach zeta^{-1}");
    const WindowSeries br = kernel_bracket(qmax + rat(1, 4), zeta_lo);
    const ScalarQSeries em6 = sq_scale(eta_quotient({{1, -6}}, qmax), -g_i);
    return ws_mul_poly(br, ps_from_scalar(em6));
}

// Exact bracket coefficient at any cell, by direct index enumeration: only
// the column's own (j,k) family can land on it, and the exponent is strictly
// increasing in j.
inline GaussRat kernel_bracket_coeff(const Rat& qe, const Rat& ze) {
    GaussRat acc(0);
    if (!is_integer(ze) || rat_num(ze) % 2 == 0 || !is_integer(qe) || qe < 0) return acc;
    if (ze < 0) {
        const long long k = to_ll((-rat_num(ze) - 1) / 2);
        for (long long j = 0;; ++j) {
            const Rat E = rat(j * (j + 1), 2) + rat(j * k);
            if (E > qe) break;
            if (E == qe) acc += GaussRat(parity_sign(j));
        }
    } else {
        const long long k = to_ll((rat_num(ze) - 1) / 2);
        for (long long j = 0;; ++j) {
            const Rat E = rat(j * (j + 1), 2) + rat((1 + j) * (1 + k));
            if (E > qe) break;
            if (E == qe) acc += GaussRat(parity_sign(j));
        }
    }
    return acc;
}

// Exact kernel coefficient at any cell — no window floor: the bracket column
// is enumerated on demand and convolved with -i/eta^6.
inline GaussRat inverse_theta_kernel_coeff(const Rat& qe, const Rat& ze) {
    GaussRat acc(0);
    if (!is_integer(ze) || rat_num(ze) % 2 == 0) return acc;
    if (qe < rat(-1, 4)) return acc;
    const ScalarQSeries em6 = sq_scale(eta_quotient({{1, -6}}, qe + rat(1, 2)), -g_i);
    const long long k = to_ll((boost::multiprecision::abs(rat_num(ze)) - 1) / 2);
    for (long long j = 0;; ++j) {
        const Rat E = (ze < 0) ? rat(j * (j + 1), 2) + rat(j * k)
                               : rat(j * (j + 1), 2) + rat((1 + j) * (1 + k));
        if (E > qe + rat(1, 4)) break;
        acc += GaussRat(parity_sign(j)) * em6.coeff(qe - E);
    }
    return acc;
}

}  // namespace charq
