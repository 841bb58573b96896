#pragma once
// The (+)-sector N4 characters as pure multiple q-series, one zeta-column at
// a time — no division anywhere.  Distributing theta_{ab}^2 and the
// reciprocal-theta bracket through the Psi rows turns each character into
//
//   zeta^s sum_{n in Z} zeta^n { A_even(q) [cells, n1 = n mod 2]
//                              + A_odd(q)  [cells, n1 != n mod 2] },
//
// s the calibrated charge of the leading term, with cells indexed by four
// integers (l1, n1, l2, n2) and carrying sign (-1)^{n1+l2} and order
//
//     coefT (n + sgn1*n1 + t)^2-style Gaussian:  coefT (n + sgn1 n1 + 2n2 + t)^2
//   + bracket:                                   l2(l2+1)/2 + l2 n2
//   + row family 1:   Mm(l1 + j/M)(l1 + k/M) + (n1 - m2)(M l1 + j)
//   - row family 2:   Mm(l1 - j/M)(l1 - k/M) + (n1 - m2)(M l1 - k)
//
// where (j, k, orientation) are the label's Psi parameters, coefT = 1/4,
// t = 1 on twisted sectors, sgn1 = -orientation, and
//
//     A_even = eta(2t)^5 / (eta^8 eta(4t)^2),   A_odd = 2 eta(4t)^2 / (eta^6 eta(2t)).
//
// The (l1, n1) regions are NOT the uniform [l1,n1 >= 0] - [l1,n1 < 0] of the
// (l2, n2) bracket: each row family keeps its own vertex split, the one its
// alternating rows force (identical to psi.hpp's emission rules) —
//   family 1: rows l1 >= 0 added (n1 >= 0), rows l1 <= -1 subtracted (n1 <= -1);
//   family 2: rows l1 >= 1 added,            rows l1 <= 0 subtracted;
// and a zero-slope row (j = 0 in family 1, k = 0 in family 2, twisted
// boundary labels only) joins the added half when orientation = -1 and the
// subtracted half when orientation = +1.  Under the uniform reading the
// family-2 line (l1, n1, l2, n2) = (0, 2p, 0, p) already carries infinitely
// many same-sign cells of order 1/4 - 3p in a single column — no lowest term
// exists (see uniform_region_witness), so only the family-wise split defines
// a series.  StringVariant switches in the alternative readings that the
// mechanical comparison against the quotient path rules out.
//
// Everything is enumerated exactly: per output column, the cells with order
// below the certified budget form a finite set, reached with sound stopping
// rules (rows stop past their order-minimizing vertex; the n1 scan stops
// once both convex per-region lower bounds exceed the budget while
// non-decreasing; bracket scans stop the same way).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charq/n4.hpp"

namespace charq {

// Alternative readings of the multiple-sum data.  All false = the readings
// confirmed by the quotient path; each switch installs one alternative.
struct StringVariant {
    bool iii_prefactor_plus{false};  // untwisted heart III: column offset m2+1, not m2-1
    bool iii_tw_coef_half{false};    // twisted heart III: Gaussian coefficient 1/2, not 1/4
    bool iii_tw_plus_n1{false};      // twisted heart III: +n1 in the Gaussian, not -n1
    bool m2_tw_arg_minus{false};     // M=2 twisted triple sum: (n-2k-1/2)^2, not (n+2k+1/2)^2
};

namespace detail {

// Row data of one (label, sector) sum, shared by the evaluator and the
// divergence witness.
struct QuadShape {
    long long M{2};
    Rat m;
    long long m2{0};
    Rat j, k;
    int orient{1};
    long long sgn1{-1};
    long long tsh{0};
    Rat coefT;

    Rat sj(int fam) const { return fam == 1 ? j : Rat(-j); }
    Rat sk(int fam) const { return fam == 1 ? k : Rat(-k); }
    Rat base(int fam, long long l1) const {
        return Rat(Rat(M) * m * (Rat(l1) + sj(fam) / M) * (Rat(l1) + sk(fam) / M));
    }
    Rat slope(int fam, long long l1) const {
        return fam == 1 ? Rat(Rat(M * l1) + j) : Rat(Rat(M * l1) - k);
    }
    // cheapest order on a row: n1 = 0 on added rows, n1 = -1 on subtracted
    Rat row_min(int fam, long long l1, bool subtracted) const {
        return Rat(base(fam, l1) + Rat(subtracted ? -m2 - 1 : -m2) * slope(fam, l1));
    }
    // where that row minimum itself is smallest, as a function of l1
    Rat vertex(int fam, bool subtracted) const {
        const Rat s = Rat(subtracted ? -m2 - 1 : -m2);
        return Rat(-(m * (sj(fam) + sk(fam)) + s * M) / (Rat(2) * M * m));
    }
};

inline QuadShape quad_shape(const ModuleLabel& nl, const Sector& sec, const StringVariant& var) {
    const PsiSpec sp = n4_psi_spec(nl, sec);
    sp.validate();
    QuadShape s;
    s.M = nl.M;
    s.m = sp.m;
    s.m2 = nl.m2;
    s.j = sp.j;
    s.k = sp.k;
    s.orient = sp.orientation;
    s.sgn1 = -sp.orientation;
    s.tsh = sec.twisted ? 1 : 0;
    s.coefT = rat(1, 4);
    if (nl.heart == Heart::III && sec.twisted) {
        if (var.iii_tw_plus_n1) s.sgn1 = 1;
        if (var.iii_tw_coef_half) s.coefT = rat(1, 2);
    }
    return s;
}

// Enumerate the bracket [l,k >= 0] - [l,k < 0] against a per-k cost T(k)
// (convex in k), calling emit(l, k, region_sign, T(k) + l(l+1)/2 + lk) for
// every cell with total cost <= budget.  In the subtracted region the
// bracket part is at least |k| (minimized at l = -1) and grows as l
// descends, so T(k) + |k| is a valid convex stopping bound there.
template <class TF, class EmitF>
void bracket_scan(const Rat& budget, TF Tof, EmitF emit) {
    {
        bool first = true;
        Rat prev(0);
        for (long long k = 0;; ++k) {
            const Rat T = Tof(k);
            if (T > budget) {
                if (!first && T >= prev) break;
            } else {
                for (long long l = 0;; ++l) {
                    const long long br = l * (l + 1) / 2 + l * k;
                    if (T + br > budget) break;
                    emit(l, k, 1, Rat(T + br));
                }
            }
            prev = T;
            first = false;
        }
    }
    {
        bool first = true;
        Rat prev(0);
        for (long long k = -1;; --k) {
            const Rat T = Tof(k);
            const Rat lb = Rat(T - k);
            if (lb > budget) {
                if (!first && lb >= prev) break;
            } else {
                for (long long l = -1;; --l) {
                    const long long br = l * (l + 1) / 2 + l * k;
                    if (T + br > budget) break;
                    emit(l, k, -1, Rat(T + br));
                }
            }
            prev = lb;
            first = false;
        }
    }
}

}  // namespace detail

// The (+) or (+)tw character of an N4 label, computed column by column from
// the multiple sums.  The result is a window view: columns of [lo, hi] exact
// through qmax; z_top marks the top of the computed window, NOT a vanishing
// bound, so compare the result — don't multiply it.
inline WindowSeries n4_string_expansion(const ModuleLabel& lab, const Sector& sec,
                                        const Rat& qmax, const Rat& lo, const Rat& hi,
                                        const StringVariant& var = {}) {
    lab.validate();
    if (lab.algebra != Algebra::N4)
        throw std::invalid_argument("n4_string_expansion: label must carry the N4 tag");
    if (!sec.plus)
        throw std::invalid_argument("n4_string_expansion: stated for the (+) sectors only");
    if (hi < lo) throw std::invalid_argument("n4_string_expansion: empty column window");
    const ModuleLabel nl = normalize_heart(lab);
    const detail::QuadShape qs = detail::quad_shape(nl, sec, var);

    Rat spref = conformal_data(nl, sec).s;
    if (nl.heart == Heart::III && !sec.twisted && var.iii_prefactor_plus) spref += 2;

    // Even-parity cells meet A_even's lowest order -1/4, so they matter a
    // quarter-order beyond qmax.
    const Rat B = qmax + rat(1, 4);

    const bool zero1 = qs.j == 0, zero2 = qs.k == 0;
    const long long addStart1 = (!zero1 || qs.orient == -1) ? 0 : 1;
    const long long subStart1 = (zero1 && qs.orient == 1) ? 0 : -1;
    const long long addStart2 = (zero2 && qs.orient == -1) ? 0 : 1;
    const long long subStart2 = (!zero2 || qs.orient == 1) ? 0 : -1;

    struct Col {
        Rat exp;
        ScalarQSeries bucket[2];  // [0]: n1 = n mod 2, [1]: opposite
    };
    std::vector<Col> cols;

    for (long long n = ceil_ll(lo - spref); n <= floor_ll(Rat(hi - spref)); ++n) {
        Col col;
        col.exp = Rat(spref + n);
        col.bucket[0].qmax = B;
        col.bucket[1].qmax = qmax;  // A_odd starts at order 0

        auto emit = [&](const Rat& E, long long n1, long long l2, int sgn) {
            const int par = int(((n1 - n) % 2 + 2) % 2);
            col.bucket[par].add_term(E, GaussRat(sgn * parity_sign(n1 + l2)));
        };

        auto scan_row = [&](int fam, long long l1, int rs1) {
            const Rat F0 = qs.base(fam, l1);
            const Rat sl = qs.slope(fam, l1);
            const int famSign = fam == 1 ? 1 : -1;
            const long long step = rs1 > 0 ? 1 : -1;
            if (sl == 0 && qs.sgn1 * step < 0)
                throw std::logic_error(
                    "zero-slope line scans against the zeta drift: this reading gives the "
                    "column infinitely many same-sign contributions and no expansion exists");
            bool first = true;
            Rat prevP(0), prevM(0);
            for (long long n1 = (rs1 > 0 ? 0 : -1);; n1 += step) {
                const Rat F = Rat(F0 + Rat(n1 - qs.m2) * sl);
                const long long u0 = n + qs.sgn1 * n1 + qs.tsh;
                // convex-in-n1 lower bounds on Gaussian + bracket per region
                const Rat gp = u0 <= 0 ? Rat(0) : Rat(qs.coefT * u0 * u0);
                const Rat xstar = Rat((Rat(1) / (Rat(4) * qs.coefT) - u0) / 2);
                const Rat gm = xstar <= -1
                                   ? Rat(Rat(u0) / 2 - Rat(1) / (Rat(16) * qs.coefT))
                                   : Rat(qs.coefT * (u0 - 2) * (u0 - 2) + 1);
                const Rat LBp = Rat(F + gp), LBm = Rat(F + gm);
                if (!first && LBp > B && LBp >= prevP && LBm > B && LBm >= prevM) break;
                if (LBp <= B || LBm <= B)
                    detail::bracket_scan(
                        Rat(B - F),
                        [&](long long n2) {
                            const long long a = u0 + 2 * n2;
                            return Rat(qs.coefT * a * a);
                        },
                        [&](long long l2, long long n2, int rs2, const Rat& cost) {
                            (void)n2;
                            emit(Rat(F + cost), n1, l2, famSign * rs1 * rs2);
                        });
                prevP = LBp;
                prevM = LBm;
                first = false;
            }
        };

        for (int fam = 1; fam <= 2; ++fam) {
            const long long a0 = fam == 1 ? addStart1 : addStart2;
            const Rat va = qs.vertex(fam, false);
            for (long long l1 = a0;; ++l1) {
                const Rat fmin = qs.row_min(fam, l1, false);
                if (fmin > B && Rat(l1) > va) break;
                if (fmin <= B) scan_row(fam, l1, +1);
            }
            const long long s0 = fam == 1 ? subStart1 : subStart2;
            const Rat vs = qs.vertex(fam, true);
            for (long long l1 = s0;; --l1) {
                const Rat fmin = qs.row_min(fam, l1, true);
                if (fmin > B && Rat(l1) < vs) break;
                if (fmin <= B) scan_row(fam, l1, -1);
            }
        }
        cols.push_back(std::move(col));
    }

    Rat dip(0);
    for (const auto& c : cols)
        for (const auto& b : c.bucket)
            if (!b.is_zero()) dip = std::min<Rat>(dip, b.min_q());
    const ScalarQSeries Aeven = eta_quotient({{2, 5}, {1, -8}, {4, -2}}, Rat(qmax - dip));
    const ScalarQSeries Aodd =
        sq_scale(eta_quotient({{4, 2}, {1, -6}, {2, -1}}, Rat(qmax - dip)), GaussRat(2));

    WindowSeries out;
    out.qmax = qmax;
    out.t_lo = lo;
    out.z_top = hi;
    for (const auto& c : cols) {
        const ScalarQSeries s = sq_truncate(
            sq_add(sq_mul(c.bucket[0], Aeven), sq_mul(c.bucket[1], Aodd)), qmax);
        for (const auto& [qe, cf] : s.t) out.add_term(qe, c.exp, cf);
    }
    return out;
}

// The (M, m) = (2, 1) module collapses to triple sums over the bracket
// alone: ch^{(+)}    = zeta^{-1}   sum_n zeta^n [cells] (-1)^l q^{l(l+1)/2 + lk + (n+2k)^2/2} / eta^3,
//        ch^{(+)tw}  = zeta^{-1/2} sum_n zeta^n [cells] (-1)^l q^{l(l+1)/2 + lk + (n+2k+1/2)^2/2} / eta^3.
// Same window-view semantics as n4_string_expansion.
inline WindowSeries m2_triple_expansion(const Sector& sec, const Rat& qmax, const Rat& lo,
                                        const Rat& hi, const StringVariant& var = {}) {
    if (!sec.plus)
        throw std::invalid_argument("m2_triple_expansion: stated for the (+) sectors only");
    if (hi < lo) throw std::invalid_argument("m2_triple_expansion: empty column window");
    const Rat B = qmax + rat(1, 8);
    const Rat spref = sec.twisted ? rat(-1, 2) : Rat(-1);

    struct Col {
        Rat exp;
        ScalarQSeries b;
    };
    std::vector<Col> cols;
    for (long long n = ceil_ll(lo - spref); n <= floor_ll(Rat(hi - spref)); ++n) {
        Col c;
        c.exp = Rat(spref + n);
        c.b.qmax = B;
        detail::bracket_scan(
            B,
            [&](long long k) {
                Rat a = !sec.twisted ? Rat(n + 2 * k)
                        : var.m2_tw_arg_minus ? Rat(Rat(n - 2 * k) - rat(1, 2))
                                              : Rat(Rat(n + 2 * k) + rat(1, 2));
                return Rat(a * a / 2);
            },
            [&](long long l, long long k, int rs, const Rat& cost) {
                (void)k;
                c.b.add_term(cost, GaussRat(rs * parity_sign(l)));
            });
        cols.push_back(std::move(c));
    }

    Rat dip(0);
    for (const auto& c : cols)
        if (!c.b.is_zero()) dip = std::min<Rat>(dip, c.b.min_q());
    const ScalarQSeries e3 = eta_quotient({{1, -3}}, Rat(qmax - dip));

    WindowSeries out;
    out.qmax = qmax;
    out.t_lo = lo;
    out.z_top = hi;
    for (const auto& c : cols) {
        const ScalarQSeries s = sq_truncate(sq_mul(c.b, e3), qmax);
        for (const auto& [qe, cf] : s.t) out.add_term(qe, c.exp, cf);
    }
    return out;
}

// Orders of the family-2 cells (l1, n1, l2, n2) = (0, 2p, 0, p), output
// column zeta^s (n = 0), for the heart-I module (3,1,0,0,1), sector (+),
// under the uniform region reading [l1, n1 >= 0] applied to both families.
// All these cells carry coefficient -1, and the orders are 1/4 - 3p: the
// uniform reading gives that column no lowest term, hence no expansion.
inline std::vector<Rat> uniform_region_witness(int count) {
    ModuleLabel lab;
    lab.M = 3;
    lab.m = 1;
    lab.m2 = 0;
    lab.k1 = 0;
    lab.k2 = 1;
    lab.heart = Heart::I;
    lab.algebra = Algebra::N4;
    lab.validate();
    const detail::QuadShape qs = detail::quad_shape(lab, {true, false}, {});
    std::vector<Rat> out;
    for (long long p = 0; p < count; ++p) {
        const long long n1 = 2 * p, n2 = p;
        const Rat F2 = Rat(qs.base(2, 0) + Rat(n1 - qs.m2) * qs.slope(2, 0));
        const long long a = 0 + qs.sgn1 * n1 + qs.tsh + 2 * n2;
        out.push_back(Rat(F2 + qs.coefT * a * a));  // bracket part is 0 at l2 = 0
    }
    return out;
}

// One adjudicated reading: the two candidate forms of a sum datum, each
// compared column-by-column against the quotient-path character.
struct ReadingCase {
    std::string quantity;
    std::string corrected;  // the reading the quotient path confirms
    std::string printed;    // the alternative it rules out
    CheckResult corrected_check;
    CheckResult printed_check;  // pass=false expected; detail says how it fails
};

// Each case anchors its own window at the label's leading cell: `depth`
// orders above it, `width` columns below the top charge, and two columns
// above — so a reading that shifts columns or spawns spurious high cells is
// caught right at the edge instead of slipping past a fixed window.
inline std::vector<ReadingCase> adjudicate_sum_readings(const Rat& depth = Rat(2),
                                                        const Rat& width = Rat(6)) {
    std::vector<ReadingCase> out;

    auto quad_case = [&](std::string quantity, std::string corrected, std::string printed,
                         const ModuleLabel& lab, const Sector& sec, const StringVariant& var) {
        const N4Leading lead = n4_leading(lab, sec);
        const Rat qmax = Rat(lead.q_exp + depth);
        const Rat lo = Rat(lead.zeta_top - width), hi = Rat(lead.zeta_top + 2);
        const WindowSeries kr = n4_character(lab, sec, qmax, lo);
        auto run = [&](const char* name, const StringVariant& v) -> CheckResult {
            try {
                const WindowSeries s = n4_string_expansion(lab, sec, qmax, lo, hi, v);
                return check_from(name, ws_compare(s, kr, qmax, lo, hi));
            } catch (const std::logic_error& e) {
                return {name, false, e.what()};
            }
        };
        out.push_back({std::move(quantity), std::move(corrected), std::move(printed),
                       run("corrected", {}), run("printed", var)});
    };

    ModuleLabel iii;
    iii.M = 3;
    iii.m = 1;
    iii.m2 = 0;
    iii.k1 = 0;
    iii.k2 = 1;
    iii.heart = Heart::III;
    iii.algebra = Algebra::N4;

    ModuleLabel iii5 = iii;  // smallest twisted heart-III label without a zero-slope line
    iii5.M = 5;
    iii5.k1 = 1;

    quad_case("untwisted heart-III column offset", "m2 - 1 - m k2/M", "m2 + 1 - m k2/M", iii,
              {true, false}, {.iii_prefactor_plus = true});

    quad_case("twisted heart-III Gaussian coefficient", "1/4 (n - n1 + 2 n2 + 1)^2",
              "1/2 (n - n1 + 2 n2 + 1)^2", iii5, {true, true}, {.iii_tw_coef_half = true});

    quad_case("twisted heart-III Gaussian n1 sign", "1/4 (n - n1 + 2 n2 + 1)^2",
              "1/4 (n + n1 + 2 n2 + 1)^2", iii5, {true, true}, {.iii_tw_plus_n1 = true});

    // at the boundary label the +n1 reading does not even terminate:
    // its zero-slope line piles same-sign cells into one column
    quad_case("twisted heart-III Gaussian n1 sign at the k1 = 0 boundary",
              "1/4 (n - n1 + 2 n2 + 1)^2", "1/4 (n + n1 + 2 n2 + 1)^2", iii, {true, true},
              {.iii_tw_plus_n1 = true});

    {
        ModuleLabel m2lab;
        m2lab.M = 2;
        m2lab.m = 1;
        m2lab.algebra = Algebra::N4;
        const Sector tw{true, true};
        const N4Leading lead = n4_leading(m2lab, tw);
        const Rat qmax = Rat(lead.q_exp + depth);
        const Rat lo = Rat(lead.zeta_top - width), hi = Rat(lead.zeta_top + 2);
        const WindowSeries kr = n4_character(m2lab, tw, qmax, lo);
        out.push_back(
            {"M = 2 twisted triple-sum Gaussian argument",
             "(n + 2k + 1/2)^2 / 2",
             "(n - 2k - 1/2)^2 / 2",
             check_from("corrected",
                        ws_compare(m2_triple_expansion(tw, qmax, lo, hi, {}), kr, qmax, lo, hi)),
             check_from("printed",
                        ws_compare(m2_triple_expansion(tw, qmax, lo, hi, {.m2_tw_arg_minus = true}),
                                   kr, qmax, lo, hi))});
    }
    return out;
}

}  // namespace charq
