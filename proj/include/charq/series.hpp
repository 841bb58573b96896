#pragma once

// Truncated q-expansions.
//
// ScalarQSeries : sum_E c_E q^E with c_E in Q(i), rational exponents E, kept
//                 complete through order `qmax` (every term with E <= qmax
//                 that the represented object has is present and exact).
// PolySeries    : same, but each order's coefficient is a Laurent polynomial
//                 in zeta (finite support per order).
//
// "Complete through qmax" is the invariant every operation preserves; the
// multiplication rule truncates the product to the largest order both factors
// can certify:  qmax(ab) = min(qmax(a) + min_q(b), qmax(b) + min_q(a)).

#include "charq/gauss.hpp"
#include "charq/rational.hpp"
#include "charq/zpoly.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace charq {

struct ScalarQSeries {
    Rat qmax{0};
    std::map<Rat, GaussRat> t;

    bool is_zero() const { return t.empty(); }
    Rat min_q() const { return t.empty() ? Rat(0) : t.begin()->first; }

    GaussRat coeff(const Rat& e) const {
        auto it = t.find(e);
        return it == t.end() ? GaussRat(0) : it->second;
    }

    void add_term(const Rat& e, const GaussRat& c) {
        if (c.is_zero() || e > qmax) return;
        auto [it, fresh] = t.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
};

inline ScalarQSeries sq_one(const Rat& qmax) {
    ScalarQSeries s;
    s.qmax = qmax;
    s.t[Rat(0)] = GaussRat(1);
    return s;
}

// Sharpest certified lower bound on the represented function's lowest order:
// an empty store only certifies "nothing at or below qmax" — the function may
// well have terms just beyond — so qmax itself is the bound then.
inline Rat certified_min_q(const ScalarQSeries& s) { return s.is_zero() ? s.qmax : s.min_q(); }

inline ScalarQSeries sq_mul(const ScalarQSeries& a, const ScalarQSeries& b) {
    ScalarQSeries r;
    r.qmax = std::min<Rat>(a.qmax + certified_min_q(b), b.qmax + certified_min_q(a));
    for (auto& [ea, ca] : a.t) {
        if (ea + certified_min_q(b) > r.qmax) break;
        for (auto& [eb, cb] : b.t) {
            if (ea + eb > r.qmax) break;
            r.add_term(ea + eb, ca * cb);
        }
    }
    return r;
}

inline ScalarQSeries sq_scale(ScalarQSeries s, const GaussRat& c) {
    std::map<Rat, GaussRat> out;
    if (!c.is_zero())
        for (auto& [e, v] : s.t) out[e] = v * c;
    s.t = std::move(out);
    return s;
}

inline ScalarQSeries sq_shift(ScalarQSeries s, const Rat& d) {
    std::map<Rat, GaussRat> out;
    for (auto& [e, v] : s.t) out[e + d] = v;
    s.t = std::move(out);
    s.qmax += d;
    return s;
}

inline ScalarQSeries sq_add(const ScalarQSeries& a, const ScalarQSeries& b) {
    ScalarQSeries r;
    r.qmax = std::min(a.qmax, b.qmax);
    for (auto& [e, v] : a.t) r.add_term(e, v);
    for (auto& [e, v] : b.t) r.add_term(e, v);
    return r;
}

// Multiplicative inverse of a series with nonzero lowest term.  With
// s = c*q^d*(1 + u),  min_q(u) > 0, the inverse is c^{-1}q^{-d}*sum (-u)^k,
// computed order by order on the lattice (1/D)Z spanned by u's exponents.
inline ScalarQSeries scalar_inverse(const ScalarQSeries& s) {
    if (s.is_zero()) throw std::domain_error("inverse of zero series");
    const Rat d = s.min_q();
    const GaussRat lead = s.t.begin()->second;
    const GaussRat ilead = lead.inverse();

    // normalized tail u: exponents > 0
    std::map<Rat, GaussRat> u;
    Int D = 1;
    for (auto it = std::next(s.t.begin()); it != s.t.end(); ++it) {
        Rat e = it->first - d;
        u[e] = it->second * ilead;
        D = boost::multiprecision::lcm(D, rat_den(e));
    }

    const Rat n = s.qmax - d;  // order the normalized inverse is complete to
    ScalarQSeries inv;
    inv.qmax = n;
    inv.t[Rat(0)] = GaussRat(1);
    if (!u.empty()) {
        // walk the lattice k/D upward; r[x] = -sum_{0<y<=x} u[y]*r[x-y]
        for (Int k = 1; Rat(k, D) <= n; ++k) {
            Rat x(k, D);
            GaussRat acc(0);
            for (auto& [y, uy] : u) {
                if (y > x) break;
                auto it = inv.t.find(x - y);
                if (it != inv.t.end()) acc -= uy * it->second;
            }
            if (!acc.is_zero()) inv.t[x] = acc;
        }
    }
    return sq_shift(sq_scale(std::move(inv), ilead), -d);
}

struct PolySeries {
    Rat qmax{0};
    std::map<Rat, ZPoly> t;

    bool is_zero() const { return t.empty(); }
    Rat min_q() const { return t.empty() ? Rat(0) : t.begin()->first; }

    const ZPoly* order(const Rat& e) const {
        auto it = t.find(e);
        return it == t.end() ? nullptr : &it->second;
    }

    void add_term(const Rat& qe, const Rat& ze, const GaussRat& c) {
        if (qe > qmax || c.is_zero()) return;
        auto& p = t[qe];
        p.add_term(ze, c);
        if (p.is_zero()) t.erase(qe);
    }

    void add_order(const Rat& qe, const ZPoly& p) {
        if (qe > qmax || p.is_zero()) return;
        auto [it, fresh] = t.try_emplace(qe, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    // extreme zeta-exponent over all retained orders
    Rat max_zeta() const {
        std::optional<Rat> m;
        for (auto& [e, p] : t)
            if (!m || p.max_exp() > *m) m = p.max_exp();
        if (!m) throw std::logic_error("max_zeta of zero series");
        return *m;
    }
    Rat min_zeta() const {
        std::optional<Rat> m;
        for (auto& [e, p] : t)
            if (!m || p.min_exp() < *m) m = p.min_exp();
        if (!m) throw std::logic_error("min_zeta of zero series");
        return *m;
    }
};

// lower the certification of a series to exactly `qmax`, dropping higher terms
inline ScalarQSeries sq_truncate(ScalarQSeries s, const Rat& qmax) {
    if (qmax > s.qmax) throw std::invalid_argument("truncation cannot raise certification");
    s.t.erase(s.t.upper_bound(qmax), s.t.end());
    s.qmax = qmax;
    return s;
}

inline PolySeries ps_zero(const Rat& qmax) {
    PolySeries r;
    r.qmax = qmax;
    return r;
}

inline PolySeries ps_from_scalar(const ScalarQSeries& s) {
    PolySeries r;
    r.qmax = s.qmax;
    for (auto& [e, c] : s.t) r.t[e] = ZPoly::monomial(Rat(0), c);
    return r;
}

inline PolySeries ps_add(const PolySeries& a, const PolySeries& b) {
    PolySeries r;
    r.qmax = std::min(a.qmax, b.qmax);
    for (auto& [e, p] : a.t) r.add_order(e, p);
    for (auto& [e, p] : b.t) r.add_order(e, p);
    return r;
}

inline PolySeries ps_scale(const PolySeries& a, const GaussRat& c) {
    PolySeries r;
    r.qmax = a.qmax;
    if (!c.is_zero())
        for (auto& [e, p] : a.t) r.t[e] = p.scaled(c);
    return r;
}

inline Rat certified_min_q(const PolySeries& s) { return s.is_zero() ? s.qmax : s.min_q(); }

inline PolySeries ps_mul(const PolySeries& a, const PolySeries& b) {
    PolySeries r;
    r.qmax = std::min<Rat>(a.qmax + certified_min_q(b), b.qmax + certified_min_q(a));
    for (auto& [ea, pa] : a.t) {
        if (ea + certified_min_q(b) > r.qmax) break;
        for (auto& [eb, pb] : b.t) {
            if (ea + eb > r.qmax) break;
            r.add_order(ea + eb, pa * pb);
        }
    }
    return r;
}

inline PolySeries ps_truncate(PolySeries s, const Rat& qmax) {
    if (qmax > s.qmax) throw std::invalid_argument("truncation cannot raise certification");
    s.t.erase(s.t.upper_bound(qmax), s.t.end());
    s.qmax = qmax;
    return s;
}

inline PolySeries ps_mul_scalar_series(const PolySeries& a, const ScalarQSeries& s) {
    return ps_mul(a, ps_from_scalar(s));
}

// multiply by c * q^dq * zeta^dz
inline PolySeries ps_shift(const PolySeries& a, const Rat& dq, const Rat& dz,
                           const GaussRat& c = GaussRat(1)) {
    PolySeries r;
    r.qmax = a.qmax + dq;
    if (c.is_zero()) return r;
    for (auto& [e, p] : a.t) r.t[e + dq] = p.shifted(dz).scaled(c);
    return r;
}

// zeta -> zeta^{-1}  (evaluation at -z)
inline PolySeries ps_flip_zeta(const PolySeries& a) {
    PolySeries r;
    r.qmax = a.qmax;
    for (auto& [e, p] : a.t) r.t[e] = p.flipped();
    return r;
}

// zeta -> zeta^k, q untouched (evaluation at kz)
inline PolySeries ps_stretch_zeta(const PolySeries& a, const Rat& k) {
    PolySeries r;
    r.qmax = a.qmax;
    for (auto& [e, p] : a.t) {
        ZPoly s;
        for (auto& [ze, c] : p.terms()) s.add_term(ze * k, c);
        r.t[e] = std::move(s);
    }
    return r;
}

struct MismatchReport {
    bool equal = true;
    Rat q_exp, zeta_exp;
    GaussRat lhs, rhs;
    std::string str() const {
        if (equal) return "equal";
        std::ostringstream os;
        os << "first mismatch at q^" << rat_str(q_exp) << " zeta^" << rat_str(zeta_exp)
           << ": lhs=" << lhs.str() << " rhs=" << rhs.str();
        return os.str();
    }
};

// Compare through q-order `order` (must be certified by both sides).
inline MismatchReport ps_compare(const PolySeries& a, const PolySeries& b, const Rat& order) {
    if (order > a.qmax || order > b.qmax)
        throw std::invalid_argument("comparison order exceeds certified truncation");
    MismatchReport rep;
    auto ita = a.t.begin();
    auto itb = b.t.begin();
    auto flag = [&](const Rat& qe, const Rat& ze, GaussRat l, GaussRat r) {
        rep.equal = false;
        rep.q_exp = qe;
        rep.zeta_exp = ze;
        rep.lhs = l;
        rep.rhs = r;
    };
    while (true) {
        const bool ea = (ita == a.t.end() || ita->first > order);
        const bool eb = (itb == b.t.end() || itb->first > order);
        if (ea && eb) break;
        if (eb || (!ea && ita->first < itb->first)) {
            flag(ita->first, ita->second.min_exp(), ita->second.coeff(ita->second.min_exp()),
                 GaussRat(0));
            return rep;
        }
        if (ea || itb->first < ita->first) {
            flag(itb->first, itb->second.min_exp(), GaussRat(0),
                 itb->second.coeff(itb->second.min_exp()));
            return rep;
        }
        if (ita->second != itb->second) {
            // locate the lowest differing zeta-exponent
            const ZPoly d = ita->second - itb->second;
            const Rat ze = d.min_exp();
            flag(ita->first, ze, ita->second.coeff(ze), itb->second.coeff(ze));
            return rep;
        }
        ++ita;
        ++itb;
    }
    return rep;
}

inline bool ps_equal(const PolySeries& a, const PolySeries& b, const Rat& order) {
    return ps_compare(a, b, order).equal;
}

}  // namespace charq
