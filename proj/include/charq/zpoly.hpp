#pragma once

// Laurent "polynomials" in zeta = e^{2*pi*i*z} with rational exponents and
// Gaussian-rational coefficients.  One ZPoly holds the zeta-dependence of a
// single q-order of a series.  Exponents may live on several cosets of Z
// (e.g. integers and half-integers mix only across different series, but the
// division routine below is careful to treat cosets independently anyway).

#include "charq/gauss.hpp"
#include "charq/rational.hpp"

#include <map>
#include <stdexcept>

namespace charq {

class ZPoly {
public:
    using Map = std::map<Rat, GaussRat>;

    ZPoly() = default;

    static ZPoly monomial(const Rat& exp, const GaussRat& c) {
        ZPoly p;
        if (!c.is_zero()) p.c_[exp] = c;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    const Map& terms() const { return c_; }
    std::size_t size() const { return c_.size(); }

    GaussRat coeff(const Rat& exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? GaussRat(0) : it->second;
    }

    // lowest / highest zeta-exponent present (throws on zero poly)
    const Rat& min_exp() const { require_nonzero(); return c_.begin()->first; }
    const Rat& max_exp() const { require_nonzero(); return c_.rbegin()->first; }

    void add_term(const Rat& exp, const GaussRat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = c_.try_emplace(exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    ZPoly& operator+=(const ZPoly& o) {
        for (auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    ZPoly& operator-=(const ZPoly& o) {
        for (auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }

    ZPoly operator-() const {
        ZPoly r;
        for (auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }

    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        ZPoly r;
        for (auto& [ea, ca] : a.c_)
            for (auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    ZPoly scaled(const GaussRat& s) const {
        ZPoly r;
        if (s.is_zero()) return r;
        for (auto& [e, c] : c_) r.c_[e] = c * s;
        return r;
    }

    // multiply by zeta^d
    ZPoly shifted(const Rat& d) const {
        ZPoly r;
        for (auto& [e, c] : c_) r.c_[e + d] = c;
        return r;
    }

    // zeta -> zeta^{-1}
    ZPoly flipped() const {
        ZPoly r;
        for (auto& [e, c] : c_) r.c_[-e] = c;
        return r;
    }

    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

    // Restrict to exponents in [lo, hi].
    ZPoly clipped(const Rat& lo, const Rat& hi) const {
        ZPoly r;
        for (auto it = c_.lower_bound(lo); it != c_.end() && it->first <= hi; ++it)
            r.c_.insert(*it);
        return r;
    }

private:
    void require_nonzero() const {
        if (c_.empty()) throw std::logic_error("exponent query on zero poly");
    }
    Map c_;
};

// Exact division of f by the binomial (1 - u*zeta^{-1}) when dir == -1, or by
// (1 - u*zeta^{+1}) when dir == +1, with u in Q(i) (in practice u = ±1).
// Throws unless the division is exact.  The quotient of a downward binomial is
// recovered top-down: writing f = g*(1 - u*zeta^{-1}),
//     g[x] = f[x] + u*g[x+1]
// descending from max_exp(f); exactness is the vanishing of the final carry.
// Exponents connected by the binomial differ by 1, so each coset of Z in the
// support is processed on its own.
inline ZPoly divide_binomial_exact(const ZPoly& f, const GaussRat& u, int dir) {
    if (f.is_zero()) return {};
    if (dir != -1 && dir != 1) throw std::invalid_argument("binomial direction must be ±1");

    // split support into cosets (fractional part of the exponent)
    std::map<Rat, ZPoly::Map> cosets;
    for (auto& [e, c] : f.terms()) cosets[frac_part(e)][e] = c;

    ZPoly g;
    for (auto& [off, part] : cosets) {
        (void)off;
        if (dir == -1) {
            GaussRat carry(0);  // u * g[x+1]
            Rat x = part.rbegin()->first;
            const Rat lo = part.begin()->first;
            while (x >= lo) {
                auto it = part.find(x);
                GaussRat gx = (it == part.end() ? GaussRat(0) : it->second) + carry;
                g.add_term(x, gx);
                carry = u * gx;
                x -= 1;
            }
            if (!carry.is_zero())
                throw std::domain_error("inexact division by (1 - u*zeta^-1)");
        } else {
            GaussRat carry(0);  // u * g[x-1]
            Rat x = part.begin()->first;
            const Rat hi = part.rbegin()->first;
            while (x <= hi) {
                auto it = part.find(x);
                GaussRat gx = (it == part.end() ? GaussRat(0) : it->second) + carry;
                g.add_term(x, gx);
                carry = u * gx;
                x += 1;
            }
            if (!carry.is_zero())
                throw std::domain_error("inexact division by (1 - u*zeta^+1)");
        }
    }
    return g;
}

}  // namespace charq
