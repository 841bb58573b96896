#pragma once
// Module labels and their conformal data.
//
// A label (M, m, m_2, k_1, k_2) names a highest-weight module; the heart
// tag picks one of the four lattice triangles Omega^{(I..IV)} of admissible
// (k_1,k_2), and the algebra tag selects between the two families we expand:
//   N4 : level m/M - 1, central charge  c = -6(m/M + 1)
//   N2 : level parameter m (internal level (m+1)/M - 1), c = -3(2(m+1)/M - 1)
// Only hearts I and III are computed directly; II and IV are images of them
// under (k_1, k_2) -> (k_1 - 1, k_2), which preserves all conformal data.

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "charq/rational.hpp"

namespace charq {

enum class Heart { I, II, III, IV };
enum class Algebra { N2, N4 };

inline const char* heart_str(Heart h) {
    switch (h) {
        case Heart::I: return "I";
        case Heart::II: return "II";
        case Heart::III: return "III";
        default: return "IV";
    }
}

inline Heart heart_parse(const std::string& s) {
    if (s == "I") return Heart::I;
    if (s == "II") return Heart::II;
    if (s == "III") return Heart::III;
    if (s == "IV") return Heart::IV;
    throw std::invalid_argument("heart must be one of I, II, III, IV");
}

// Character sector: sign distinguishes the character (+) from the
// supercharacter (-); twisted marks the Ramond twist.  In terms of the
// (eps, eps') bookkeeping of the expansions, sign (+) <-> eps = 1/2,
// (-) <-> eps = 0, and twisted <-> eps' = 0, untwisted <-> eps' = 1/2.
struct Sector {
    bool plus{true};
    bool twisted{false};
};

inline const char* sector_str(const Sector& s) {
    return s.twisted ? (s.plus ? "+tw" : "-tw") : (s.plus ? "+" : "-");
}

inline Sector sector_parse(const std::string& s) {
    if (s == "+") return {true, false};
    if (s == "-") return {false, false};
    if (s == "+tw") return {true, true};
    if (s == "-tw") return {false, true};
    throw std::invalid_argument("sector must be one of +, -, +tw, -tw");
}

// Admissible (k_1, k_2) for each heart:
//   I  : k_1, k_2 >= 0,  2k_1 + k_2 <= M - 2
//   II : k_1, k_2 >= 1,  2k_1 + k_2 <= M
//   III: k_1 >= 0, k_2 >= 1,  2k_1 + k_2 <= M - 2
//   IV : k_1 >= 1, k_2 >= 0,  2k_1 + k_2 <= M
inline std::set<std::pair<long long, long long>> omega_domain(long long M, Heart h) {
    if (M < 1) throw std::invalid_argument("omega_domain: M must be positive");
    const long long lo1 = (h == Heart::II || h == Heart::IV) ? 1 : 0;
    const long long lo2 = (h == Heart::II || h == Heart::III) ? 1 : 0;
    const long long bound = (h == Heart::II || h == Heart::IV) ? M : M - 2;
    std::set<std::pair<long long, long long>> r;
    for (long long k1 = lo1; 2 * k1 <= bound; ++k1)
        for (long long k2 = lo2; 2 * k1 + k2 <= bound; ++k2) r.insert({k1, k2});
    return r;
}

struct ModuleLabel {
    long long M{2};
    long long m{1};   // N4: gcd(M, m) = 1;  N2: level parameter, gcd(M, m+1) = 1
    long long m2{0};  // 0 <= m2 <= m-1 (N4),  0 <= m2 <= m (N2)
    long long k1{0}, k2{0};
    Heart heart{Heart::I};
    Algebra algebra{Algebra::N4};

    void validate() const {
        if (M < 1) throw std::invalid_argument("label: M must be a positive integer");
        if (algebra == Algebra::N4) {
            if (m < 1) throw std::invalid_argument("label: m must be positive");
            if (boost::multiprecision::gcd(Int(M), Int(m)) != 1)
                throw std::invalid_argument("label: M and m must be coprime");
            if (m2 < 0 || m2 > m - 1)
                throw std::invalid_argument("label: m2 must lie in [0, m-1]");
            if (!omega_domain(M, heart).count({k1, k2}))
                throw std::invalid_argument("label: (k1,k2) outside the heart's domain");
        } else {
            if (m < 0) throw std::invalid_argument("label: m must be non-negative");
            if (boost::multiprecision::gcd(Int(M), Int(m + 1)) != 1)
                throw std::invalid_argument("label: M and m+1 must be coprime");
            if (m2 < 0 || m2 > m) throw std::invalid_argument("label: m2 must lie in [0, m]");
            // k_0 = M-1-k_1-k_2 >= 0 together with k_1, k_2 >= 0
            if (k1 < 0 || k2 < 0 || k1 + k2 > M - 1)
                throw std::invalid_argument("label: need k1, k2 >= 0 and k1 + k2 <= M-1");
        }
    }
};

// Hearts II and IV are computed through their images in III and I.  The
// returned label carries the same module; when a note pointer is supplied a
// one-line record of the renaming is written to it.
inline ModuleLabel normalize_heart(const ModuleLabel& lab, std::string* note = nullptr) {
    if (lab.algebra != Algebra::N4 || (lab.heart != Heart::II && lab.heart != Heart::IV))
        return lab;
    ModuleLabel r = lab;
    r.heart = (lab.heart == Heart::II) ? Heart::III : Heart::I;
    r.k1 = lab.k1 - 1;
    if (note)
        *note = std::string("heart ") + heart_str(lab.heart) + " (" + std::to_string(lab.k1) +
                "," + std::to_string(lab.k2) + ") realized as heart " + heart_str(r.heart) +
                " (" + std::to_string(r.k1) + "," + std::to_string(r.k2) + ")";
    return r;
}

inline Rat central_charge(long long M, long long m, Algebra a) {
    if (a == Algebra::N4) return -6 * (rat(m, M) + 1);
    return -3 * (2 * rat(m + 1, M) - 1);
}

// c together with the conformal weight h and the charge s of the leading
// term: the character opens with  zeta^s q^{h - c/24}.
struct ConformalData {
    Rat c;
    Rat h;
    Rat s;
};

namespace detail {

// h and s at an explicit value of the integrable index; twisted and
// untwisted branch, all four hearts.  The pairs (I, k_1, k_2) and
// (IV, k_1+1, k_2) give equal values, likewise (III, k_1, k_2) and
// (II, k_1+1, k_2) -- the test suite pins this.
inline ConformalData conformal_eval(const ModuleLabel& lab, const Sector& sec, long long m2v) {
    const Rat mM = rat(lab.m, lab.M);
    const Rat c = central_charge(lab.M, lab.m, Algebra::N4);
    const long long k1 = lab.k1, k2 = lab.k2;
    Rat h, s;
    if (!sec.twisted) {
        const Rat a = (lab.heart == Heart::I || lab.heart == Heart::III) ? rat(1, 2) : rat(-1, 2);
        h = mM * (k1 + a) * (k1 + k2 + a) - (m2v - 1) * (k1 + a) - rat(1, 4) + c / 24;
        s = (lab.heart == Heart::I || lab.heart == Heart::IV) ? Rat(mM * k2 - m2v)
                                                              : Rat(-mM * k2 + m2v - 2);
    } else {
        Rat a, b;  // h = (m/M)(k_1+a)(k_1+k_2+b) - (k_1+a)(m2-1) + c/24
        switch (lab.heart) {
            case Heart::I: a = 1; b = 0; break;
            case Heart::II: a = -1; b = 0; break;
            case Heart::III: a = 0; b = 1; break;
            default: a = 0; b = -1; break;
        }
        h = mM * (k1 + a) * (k1 + k2 + b) - (k1 + a) * (m2v - 1) + c / 24;
        s = (lab.heart == Heart::I || lab.heart == Heart::IV)
                ? Rat(-mM * (k2 - 1) + m2v - 1)
                : Rat(mM * (k2 + 1) - m2v + 1);
    }
    return {c, h, s};
}

}  // namespace detail

// Conformal data as the closed formulas state it, indexed by the label's own
// m2.  These are the weights of the modules themselves.
inline ConformalData conformal_data_raw(const ModuleLabel& lab, const Sector& sec) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("conformal_data: only the N4 family carries these weights");
    return detail::conformal_eval(lab, sec, lab.m2);
}

// Conformal data calibrated to the leading term of the character: the series
// open with  zeta^s q^{h - c/24}  for the values at m2 + 1.  Both readings
// are exposed; the tests pin conformal_data(lab) == conformal_data_raw(lab')
// with lab'.m2 = lab.m2 + 1 wherever the latter is a valid label.
inline ConformalData conformal_data(const ModuleLabel& lab, const Sector& sec) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("conformal_data: only the N4 family carries these weights");
    return detail::conformal_eval(lab, sec, lab.m2 + 1);
}

}  // namespace charq
