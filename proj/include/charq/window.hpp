#pragma once

// Series whose q-order coefficients have unbounded support in the zeta^{-1}
// direction.
//
// In the expansion domain used throughout (Im z < 0, i.e. |zeta| > 1), every
// object's coefficients are bounded ABOVE in the zeta-exponent and trail off
// downward.  A WindowSeries stores coefficients for zeta-columns >= t_lo and
// carries two guarantees through q-order `qmax`:
//   * z_top       : columns with zeta-exponent > z_top are exactly zero;
//   * [t_lo, inf) : stored columns at or above t_lo are exact.
// Both bounds shift by max_zeta(p) under multiplication by a finite series p,
// so products preserve the trusted width; columns drifting below t_lo are
// dropped (they would be contaminated by unstored input columns).

#include "charq/series.hpp"

#include <map>
#include <stdexcept>

namespace charq {

struct WindowSeries {
    Rat qmax{0};
    Rat t_lo{0};   // lowest trusted zeta-column
    Rat z_top{0};  // all columns above this are exactly zero
    std::map<Rat, ZPoly> t;

    bool is_zero_in_window() const { return t.empty(); }
    Rat min_q() const { return t.empty() ? Rat(0) : t.begin()->first; }

    GaussRat coeff(const Rat& qe, const Rat& ze) const {
        if (qe > qmax) throw std::invalid_argument("coefficient beyond certified q-order");
        if (ze < t_lo) throw std::invalid_argument("coefficient below trusted zeta-window");
        auto it = t.find(qe);
        return it == t.end() ? GaussRat(0) : it->second.coeff(ze);
    }

    void add_term(const Rat& qe, const Rat& ze, const GaussRat& c) {
        if (qe > qmax || c.is_zero()) return;
        auto& p = t[qe];
        p.add_term(ze, c);
        if (p.is_zero()) t.erase(qe);
    }

    // one zeta-column as a scalar q-series (column must be trusted)
    ScalarQSeries column(const Rat& ze) const {
        if (ze < t_lo) throw std::invalid_argument("zeta-column below trusted window");
        ScalarQSeries s;
        s.qmax = qmax;
        for (auto& [qe, p] : t) {
            GaussRat c = p.coeff(ze);
            if (!c.is_zero()) s.t[qe] = c;
        }
        return s;
    }

    // drop stored columns strictly below t_lo (they carry no guarantee)
    void prune() {
        for (auto it = t.begin(); it != t.end();) {
            ZPoly cl = it->second.clipped(t_lo, it->second.is_zero() ? t_lo : it->second.max_exp());
            if (cl.is_zero())
                it = t.erase(it);
            else {
                it->second = std::move(cl);
                ++it;
            }
        }
    }
};

inline Rat certified_min_q(const WindowSeries& s) {
    return s.t.empty() ? s.qmax : s.min_q();
}

// the string function attached to one zeta-exponent (spec'd column extraction)
inline ScalarQSeries ws_string(const WindowSeries& w, const Rat& n) { return w.column(n); }

// Embed a finite series: exact everywhere, so any t_lo may be declared.
inline WindowSeries ws_from_poly(const PolySeries& p, const Rat& t_lo) {
    WindowSeries w;
    w.qmax = p.qmax;
    w.t_lo = t_lo;
    w.z_top = p.is_zero() ? t_lo : p.max_zeta();
    for (auto& [qe, pol] : p.t) {
        ZPoly cl = pol.clipped(t_lo, pol.max_exp());
        if (!cl.is_zero()) w.t[qe] = std::move(cl);
    }
    return w;
}

inline WindowSeries ws_scale(WindowSeries w, const GaussRat& c) {
    std::map<Rat, ZPoly> out;
    if (!c.is_zero())
        for (auto& [e, p] : w.t) out[e] = p.scaled(c);
    w.t = std::move(out);
    return w;
}

inline WindowSeries ws_truncate(WindowSeries s, const Rat& qmax) {
    if (qmax > s.qmax)
        throw std::logic_error("window truncation cannot raise the certified order");
    s.qmax = qmax;
    s.t.erase(s.t.upper_bound(qmax), s.t.end());
    return s;
}

inline WindowSeries ws_add(const WindowSeries& a, const WindowSeries& b) {
    WindowSeries r;
    r.qmax = std::min(a.qmax, b.qmax);
    r.t_lo = std::max(a.t_lo, b.t_lo);
    r.z_top = std::max(a.z_top, b.z_top);
    for (auto& [e, p] : a.t) if (e <= r.qmax) r.t[e] = p;
    for (auto& [e, p] : b.t) {
        if (e > r.qmax) continue;
        auto [it, fresh] = r.t.try_emplace(e, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) r.t.erase(it);
        }
    }
    r.prune();
    return r;
}

// Window-series times finite series: both zeta-bounds shift by max_zeta(p).
// Every output column at or above t_lo + max_zeta(p) receives only stored
// (or provably zero) input columns, so the trusted width is preserved.
inline WindowSeries ws_mul_poly(const WindowSeries& w, const PolySeries& p) {
    WindowSeries r;
    if (p.is_zero()) {
        r.qmax = std::min<Rat>(w.qmax + p.qmax, p.qmax + certified_min_q(w));
        r.t_lo = w.t_lo;
        r.z_top = w.z_top;
        return r;
    }
    const Rat zt = p.max_zeta();
    r.qmax = std::min<Rat>(w.qmax + p.min_q(), p.qmax + certified_min_q(w));
    r.t_lo = w.t_lo + zt;
    r.z_top = w.z_top + zt;
    for (auto& [ew, pw] : w.t) {
        if (ew + p.min_q() > r.qmax) break;
        for (auto& [ep, pp] : p.t) {
            if (ew + ep > r.qmax) break;
            auto prod = pw * pp;
            if (prod.is_zero()) continue;
            auto [it, fresh] = r.t.try_emplace(ew + ep, std::move(prod));
            if (!fresh) {
                it->second += prod;
                if (it->second.is_zero()) r.t.erase(it);
            }
        }
    }
    r.prune();
    return r;
}

// Window times window.  An output column c = x + y is fully determined once
// every contributing pair has both factors known: x <= a.z_top forces
// y >= c - a.z_top, which clears b.t_lo when c >= b.t_lo + a.z_top (and
// symmetrically), so
//     t_lo(ab)  = max(a.t_lo + b.z_top, b.t_lo + a.z_top),
//     z_top(ab) = a.z_top + b.z_top.
// Contributions involving an unstored column land strictly below t_lo(ab),
// hence multiplying the stored cells and pruning is exact on the result's
// trusted range.
inline WindowSeries ws_mul_ws(const WindowSeries& a, const WindowSeries& b) {
    WindowSeries r;
    r.qmax = std::min<Rat>(a.qmax + certified_min_q(b), b.qmax + certified_min_q(a));
    r.t_lo = std::max(a.t_lo + b.z_top, b.t_lo + a.z_top);
    r.z_top = a.z_top + b.z_top;
    for (auto& [ea, pa] : a.t) {
        if (ea + certified_min_q(b) > r.qmax) break;
        for (auto& [eb, pb] : b.t) {
            if (ea + eb > r.qmax) break;
            auto prod = pa * pb;
            if (prod.is_zero()) continue;
            auto [it, fresh] = r.t.try_emplace(ea + eb, std::move(prod));
            if (!fresh) {
                it->second += prod;
                if (it->second.is_zero()) r.t.erase(it);
            }
        }
    }
    r.prune();
    return r;
}

// Compare two window series through `order` on columns [lo, hi]; lo must be
// trusted by both sides (columns above z_top compare as exact zeros).
inline MismatchReport ws_compare(const WindowSeries& a, const WindowSeries& b, const Rat& order,
                                 const Rat& lo, const Rat& hi) {
    if (order > a.qmax || order > b.qmax)
        throw std::invalid_argument("comparison order exceeds certified truncation");
    if (lo < a.t_lo || lo < b.t_lo)
        throw std::invalid_argument("comparison window extends below trusted columns");
    if (hi < lo) throw std::invalid_argument("empty comparison window");
    MismatchReport rep;
    std::map<Rat, int> orders;
    for (auto& [e, p] : a.t) if (e <= order) orders.emplace(e, 0);
    for (auto& [e, p] : b.t) if (e <= order) orders.emplace(e, 0);
    for (auto& [e, unused] : orders) {
        (void)unused;
        auto ia = a.t.find(e);
        auto ib = b.t.find(e);
        ZPoly pa = (ia == a.t.end()) ? ZPoly{} : ia->second.clipped(lo, hi);
        ZPoly pb = (ib == b.t.end()) ? ZPoly{} : ib->second.clipped(lo, hi);
        if (pa != pb) {
            ZPoly d = pa - pb;
            const Rat ze = d.min_exp();
            rep.equal = false;
            rep.q_exp = e;
            rep.zeta_exp = ze;
            rep.lhs = pa.coeff(ze);
            rep.rhs = pb.coeff(ze);
            return rep;
        }
    }
    return rep;
}

inline bool ws_equal(const WindowSeries& a, const WindowSeries& b, const Rat& order,
                     const Rat& lo, const Rat& hi) {
    return ws_compare(a, b, order, lo, hi).equal;
}

}  // namespace charq
