#pragma once

// Dedekind eta, eta-quotients, and Jacobi theta functions with affine
// arguments, as exact truncated series.
//
// Convention: vartheta_{ab}(tau, z) = sum_{nu in a/2 + Z} e^{pi i b nu}
// q^{nu^2/2} zeta^nu.  With this sign vartheta_11 = i q^{1/8} (zeta^{1/2} -
// zeta^{-1/2}) prod (1-q^n)(1-zeta q^n)(1-zeta^{-1} q^n); the half-period
// anchor vartheta_11(tau, z+1/2) = -vartheta_10(tau, z) and the diagonal
// specialization vartheta_11(2tau, tau) = -i q^{-1/4} eta(tau)^2/eta(2tau)
// pin it and are enforced by verify_theta_identities.

#include "charq/gauss.hpp"
#include "charq/rational.hpp"
#include "charq/series.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace charq {

// eta(scale*tau) = q^{scale/24} prod_{n>=1} (1 - q^{scale n}), complete
// through qmax.  Euler's pentagonal form of the product:
//     sum_{j in Z} (-1)^j q^{scale(j(3j-1)/2 + 1/24)}.
// The exponent is quadratic in j with positive leading coefficient and is
// strictly increasing along each scan direction below, so the first exponent
// beyond qmax proves no later term can land inside — the truncation is a
// completeness argument, not a heuristic cutoff.
inline ScalarQSeries eta_series(long long scale, const Rat& qmax) {
    if (scale <= 0) throw std::invalid_argument("eta scale must be positive");
    ScalarQSeries s;
    s.qmax = qmax;
    const Rat off = rat(scale, 24);
    for (long long j = 0;; ++j) {  // j(3j-1)/2 = 0, 1, 5, 12, ...
        Rat e = Rat(scale) * rat(j * (3 * j - 1), 2) + off;
        if (e > qmax) break;
        s.add_term(e, GaussRat(parity_sign(j)));
    }
    for (long long j = -1;; --j) {  // j(3j-1)/2 = 2, 7, 15, ...
        Rat e = Rat(scale) * rat(j * (3 * j - 1), 2) + off;
        if (e > qmax) break;
        s.add_term(e, GaussRat(parity_sign(j)));
    }
    return s;
}

// prod_i eta(scale_i * tau)^{power_i}, complete through qmax.
using EtaQuotientSpec = std::vector<std::pair<long long, long long>>;

inline ScalarQSeries eta_quotient(const EtaQuotientSpec& spec, const Rat& qmax) {
    // Inversions and negative leading exponents eat into certified range, so
    // work with margin and truncate down at the end; the final check makes
    // any bookkeeping shortfall loud instead of silently under-certified.
    Rat margin(0);
    for (auto& [scale, power] : spec) margin += rat(2 * std::llabs(power) * scale, 24);
    const Rat work = qmax + margin;
    ScalarQSeries acc = sq_one(work);
    for (auto& [scale, power] : spec) {
        if (power == 0) continue;
        const ScalarQSeries base = eta_series(scale, work);
        ScalarQSeries pw = base;
        for (long long i = 1; i < std::llabs(power); ++i) pw = sq_mul(pw, base);
        if (power < 0) pw = scalar_inverse(pw);
        acc = sq_mul(acc, pw);
    }
    if (acc.qmax < qmax) throw std::logic_error("eta quotient under-certified");
    return sq_truncate(std::move(acc), qmax);
}

// vartheta_{ab}(gamma*tau, c*z + d*tau + e)
struct ThetaSpec {
    int a{0}, b{0};  // characteristics
    Rat gamma{1};    // tau-scale
    Rat c{1};        // z-coefficient
    Rat d{0};        // + d*tau
    Rat e{0};        // + e, with e in {0, ±1/2}
};

inline ThetaSpec theta_ab(int a, int b) { return {a, b, Rat(1), Rat(1), Rat(0), Rat(0)}; }

// Expansion of the affine-argument theta:
//     sum_{nu in a/2+Z} phase(nu) q^{gamma nu^2/2 + d nu} zeta^{c nu},
//     phase(nu) = e^{2 pi i nu (b/2 + e)} in {±1, ±i}.
// The q-exponent is an upward parabola in nu with vertex at -d/gamma; both
// scans start at the lattice point nearest the vertex and move outward, where
// the exponent is strictly increasing, so the first overshoot on each side
// certifies completeness.
inline PolySeries theta_series(const ThetaSpec& t, const Rat& qmax) {
    if ((t.a != 0 && t.a != 1) || (t.b != 0 && t.b != 1))
        throw std::invalid_argument("theta characteristics must be 0 or 1");
    if (t.gamma <= 0) throw std::invalid_argument("theta tau-scale must be positive");
    const Rat ph = rat(t.b, 2) + t.e;
    if (!is_half_integer(ph))
        throw std::invalid_argument("theta shift phase leaves {±1,±i}");

    PolySeries s = ps_zero(qmax);
    const Rat half_a = rat(t.a, 2);
    const Rat vertex = -t.d / t.gamma;
    const Rat start = half_a + Rat(rat_floor(vertex - half_a));  // lattice point <= vertex
    auto add = [&](const Rat& nu) -> bool {
        const Rat E = t.gamma * nu * nu / 2 + t.d * nu;
        if (E > qmax) return false;
        s.add_term(E, t.c * nu, quarter_phase(nu * ph));
        return true;
    };
    for (Rat nu = start;; nu -= 1)
        if (!add(nu)) break;
    for (Rat nu = start + 1;; nu += 1)
        if (!add(nu)) break;
    return s;
}

}  // namespace charq
