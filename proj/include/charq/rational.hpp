#pragma once

// Exact rational arithmetic used for every exponent and coefficient in the
// library.  Exponents of q and zeta are rationals with small denominators
// (24 | denominators arising from eta prefactors, 8 from theta squares);
// nothing here ever touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long n, long long d = 1) {
    if (d < 0) { n = -n; d = -d; }  // cpp_rational insists on d > 0
    return Rat(Int(n), Int(d));
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// true when 2r is an integer
inline bool is_half_integer(const Rat& r) { return rat_den(r) <= 2; }

// floor(r) as an Int (exact)
inline Int rat_floor(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;                     // truncates toward zero
    if (n < 0 && q * d != n) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline long long to_ll(const Int& v) {
    if (v > (std::numeric_limits<long long>::max)() ||
        v < (std::numeric_limits<long long>::min)())
        throw std::overflow_error("integer exponent out of long long range");
    return static_cast<long long>(v);
}

inline long long floor_ll(const Rat& r) { return to_ll(rat_floor(r)); }
inline long long ceil_ll(const Rat& r) { return to_ll(rat_ceil(r)); }

// r mod 1, normalized into [0,1)
inline Rat frac_part(const Rat& r) { return r - Rat(rat_floor(r)); }

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// Accepts "n", "-n", "n/d" with optional sign; canonicalizes (d > 0, reduced).
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace charq
