#pragma once

// Gaussian rationals a + b*i.  All series coefficients live in this field:
// the phases that appear are e^{2*pi*i*r} with 4r integral, i.e. {1,i,-1,-i},
// so Q(i) is closed under every operation the expansions need.

#include "charq/rational.hpp"

#include <complex>
#include <stdexcept>
#include <string>

namespace charq {

struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat conj() const { return {re, -im}; }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }

    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

    GaussRat inverse() const {
        Rat n = re * re + im * im;
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        return {re / n, -im / n};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        return a * b.inverse();
    }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {rat_double(re), rat_double(im)}; }

    std::string str() const {
        if (im == 0) return rat_str(re);
        if (re == 0) return rat_str(im) + "*i";
        std::string s = rat_str(re);
        s += (im > 0) ? "+" : "-";
        Rat a = im > 0 ? im : Rat(-im);
        s += rat_str(a) + "*i";
        return s;
    }
};

inline const GaussRat g_one{Rat(1), Rat(0)};
inline const GaussRat g_i{Rat(0), Rat(1)};

// e^{2*pi*i*r} for 4r integral; these are the only phases exact expansions use.
inline GaussRat quarter_phase(const Rat& r) {
    Rat f = frac_part(r);  // in {0, 1/4, 1/2, 3/4}
    if (f == 0) return GaussRat(1);
    if (f == Rat(1, 4)) return g_i;
    if (f == Rat(1, 2)) return GaussRat(-1);
    if (f == Rat(3, 4)) return -g_i;
    throw std::domain_error("phase exponent " + rat_str(r) + " is not a quarter integer");
}

// (-1)^n for integral n
inline int parity_sign(const Rat& n) {
    if (!is_integer(n)) throw std::domain_error("parity of non-integer");
    return (rat_num(n) % 2 == 0) ? 1 : -1;
}

inline int parity_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace charq
