#pragma once

// Direct floating-point evaluation of the building blocks at a point
// (tau, z) with Im tau > 0.  These sums are computed straight from the
// defining series in complex doubles — independent of the exact expansion
// code — so they serve as numeric oracles and as the working parts of the
// modular-transformation checks, where the two sides live at different
// arguments and no common q-expansion exists.

#include "charq/theta.hpp"

#include <complex>

namespace charq {

using cnum = std::complex<double>;

inline constexpr double CHARQ_TWO_PI = 6.283185307179586476925286766559;

// e^{2 pi i w}
inline cnum e2pi(cnum w) { return std::exp(cnum(0.0, CHARQ_TWO_PI) * w); }

// theta_{ab}(gamma tau, c z + d tau + e) as a lattice sum: the nu-th term is
// e^{2 pi i nu (b/2 + e)} q^{gamma nu^2/2 + d nu} zeta^{c nu}, nu in a/2 + Z.
// Quadratic decay in nu makes the two-sided scan self-terminating: past the
// exponent vertex, three successive terms below the cutoff end the sweep.
inline cnum theta_numeric(const ThetaSpec& ts, cnum tau, cnum z, double cut = 1e-19) {
    if (tau.imag() <= 0) throw std::domain_error("theta_numeric: Im(tau) must be positive");
    if (!(ts.gamma > 0)) throw std::invalid_argument("theta_numeric: gamma must be positive");
    const double g = rat_double(ts.gamma), d = rat_double(ts.d), c = rat_double(ts.c);
    const double ph = ts.b / 2.0 + rat_double(ts.e);
    auto term = [&](double nu) {
        return e2pi(cnum(nu * ph, 0) + tau * (g * nu * nu / 2 + d * nu) + z * (c * nu));
    };
    const double vtx = -d / g;  // minimum of the q-exponent over real nu
    const double start = ts.a / 2.0 + std::floor(vtx - ts.a / 2.0);
    cnum acc(0, 0);
    for (int dir : {+1, -1}) {
        int low = 0;
        for (double nu = (dir > 0) ? start + 1 : start;; nu += dir) {
            const cnum t = term(nu);
            acc += t;
            if (std::abs(t) < cut && (dir > 0 ? nu > vtx : nu < vtx)) {
                if (++low >= 3) break;
            } else
                low = 0;
            if (std::abs(nu - start) > 1e6)
                throw std::runtime_error("theta_numeric: sum did not converge");
        }
    }
    return acc;
}

inline cnum theta_ab_numeric(int a, int b, cnum tau, cnum z) {
    return theta_numeric(theta_ab(a, b), tau, z);
}

// eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n)
inline cnum eta_numeric(cnum tau) {
    if (tau.imag() <= 0) throw std::domain_error("eta_numeric: Im(tau) must be positive");
    const double qabs = std::exp(-CHARQ_TWO_PI * tau.imag());
    // |q|^N below 1e-20 ends the product
    const long long N = 4 + static_cast<long long>(46.2 / (CHARQ_TWO_PI * tau.imag()));
    cnum p = e2pi(tau / 24.0);
    for (long long n = 1; n <= N && std::pow(qabs, double(n)) > 1e-22; ++n)
        p *= 1.0 - e2pi(tau * double(n));
    return p;
}

}  // namespace charq
