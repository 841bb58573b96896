// charq -- expand characters to tables, run the verification suites, emit
// conformal data, and spot-check the numeric transformation laws.
//
// Exit codes: 0 all requested checks pass / output written, 1 a verification
// failed, 2 usage or domain error.  Rationals cross the boundary as
// "num/den" strings, complex numbers as "a+bi"; JSON term order is (q, zeta)
// lexicographic, so documents are byte-stable for a fixed invocation.

#include <complex>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charq/json_io.hpp"
#include "charq/verify.hpp"

using namespace charq;

namespace {

// "a+bi" / "a-bi" / "bi" / "a"; the split sign is the last +/- that does not
// follow an exponent marker.
cnum parse_cnum(std::string s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    const bool imag = t.back() == 'i' || t.back() == 'I';
    if (imag) t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < t.size(); ++p)
        if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') split = p;
    auto num = [](const std::string& x) -> double {
        if (x.empty() || x == "+") return 1.0;
        if (x == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(x, &used);
        if (used != x.size()) throw std::invalid_argument("bad number \"" + x + "\"");
        return v;
    };
    if (!imag) {
        if (split != std::string::npos)
            throw std::invalid_argument("real literal with two parts: \"" + s + "\"");
        return cnum(num(t), 0.0);
    }
    if (split == std::string::npos) return cnum(0.0, num(t));
    return cnum(num(t.substr(0, split)), num(t.substr(split)));
}

Sector parse_sector_word(const std::string& w) {
    if (w == "plus") return {true, false};
    if (w == "minus") return {false, false};
    if (w == "plus-tw") return {true, true};
    if (w == "minus-tw") return {false, true};
    return sector_parse(w);  // also accepts +, -, +tw, -tw
}

struct LabelFlags {
    long long M{2}, m{1}, m2{0}, k1{0}, k2{0};
    std::string heart{"I"};
    std::string sector{"plus"};
    std::string algebra{"n4"};

    void add_to(CLI::App* cmd, bool with_algebra = true) {
        if (with_algebra)
            cmd->add_option("--algebra", algebra, "character family, n4 or n2")
                ->check(CLI::IsMember({"n4", "n2"}));
        cmd->add_option("--M", M, "lattice period M");
        cmd->add_option("--m", m, "level index m");
        cmd->add_option("--m2", m2, "charge index m2");
        cmd->add_option("--k1", k1, "first integrable index");
        cmd->add_option("--k2", k2, "second integrable index");
        cmd->add_option("--heart", heart, "domain chamber: I, II, III or IV");
        cmd->add_option("--sector", sector, "plus, minus, plus-tw or minus-tw");
    }

    ModuleLabel label() const {
        ModuleLabel lab;
        lab.M = M;
        lab.m = m;
        lab.m2 = m2;
        lab.k1 = k1;
        lab.k2 = k2;
        lab.heart = heart_parse(heart);
        lab.algebra = (algebra == "n2") ? Algebra::N2 : Algebra::N4;
        if (lab.algebra == Algebra::N4 && omega_domain(lab.M, lab.heart).empty())
            throw std::invalid_argument(std::string("Ω^{(") + heart_str(lab.heart) +
                                        ")} empty for M=" + std::to_string(lab.M));
        lab.validate();
        return lab;
    }
};

ordered_json label_json(const ModuleLabel& lab, const Sector& sec) {
    ordered_json j;
    j["M"] = lab.M;
    j["m"] = lab.m;
    j["m2"] = lab.m2;
    j["k1"] = lab.k1;
    j["k2"] = lab.k2;
    j["heart"] = heart_str(lab.heart);
    j["sector"] = sector_str(sec);
    return j;
}

void print_csv_terms(const ordered_json& series) {
    std::cout << "q,zeta,re,im\n";
    for (const auto& t : series.at("terms"))
        std::cout << t.at("q").get<std::string>() << "," << t.at("zeta").get<std::string>()
                  << "," << t.at("re").get<std::string>() << ","
                  << t.at("im").get<std::string>() << "\n";
}

int cmd_expand(const LabelFlags& lf, const std::string& qmax_s, long long window,
               const std::string& format) {
    const Rat qmax = rat_parse(qmax_s);
    if (qmax <= 0) throw std::invalid_argument("qmax must be positive");
    if (window < 1) throw std::invalid_argument("window half-width must be >= 1");
    const ModuleLabel lab = lf.label();
    const Sector sec = parse_sector_word(lf.sector);

    ordered_json doc;
    doc["algebra"] = lf.algebra;
    doc["label"] = label_json(lab, sec);
    if (lab.algebra == Algebra::N4)
        doc["series"] = to_json(n4_character(lab, sec, qmax, Rat(-window)));
    else
        doc["series"] = to_json(n2_character(lab, sec, qmax));

    if (format == "csv")
        print_csv_terms(doc.at("series"));
    else
        std::cout << doc.dump() << "\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, const SuiteOptions& opts,
               const std::string& format, const std::string& junit_path) {
    const std::vector<SuiteReport> reps = run_verification(suites, opts);

    if (!junit_path.empty()) {
        std::ofstream f(junit_path);
        if (!f) throw std::invalid_argument("cannot write " + junit_path);
        f << junit_xml(reps);
    }

    bool ok = true;
    for (const SuiteReport& r : reps) ok &= r.pass();

    if (format == "json") {
        ordered_json doc;
        doc["pass"] = ok;
        ordered_json arr = ordered_json::array();
        for (const SuiteReport& r : reps) {
            ordered_json s;
            s["name"] = r.name;
            s["pass"] = r.pass();
            ordered_json rows = ordered_json::array();
            for (const CheckResult& c : r.rows) {
                ordered_json row;
                row["name"] = c.name;
                row["pass"] = c.pass;
                if (!c.pass) row["detail"] = c.detail;
                rows.push_back(std::move(row));
            }
            s["checks"] = std::move(rows);
            arr.push_back(std::move(s));
        }
        doc["suites"] = std::move(arr);
        std::cout << doc.dump() << "\n";
    } else {
        for (const SuiteReport& r : reps) {
            std::size_t failed = 0;
            for (const CheckResult& c : r.rows) failed += c.pass ? 0 : 1;
            std::cout << "suite " << r.name << ": " << (failed == 0 ? "PASS" : "FAIL") << " ("
                      << r.rows.size() - failed << "/" << r.rows.size() << " checks)\n";
            std::size_t shown = 0;
            for (const CheckResult& c : r.rows) {
                if (c.pass || shown == 5) continue;
                std::cout << "  FAIL " << c.name << ": " << c.detail << "\n";
                ++shown;
            }
            if (failed > shown) std::cout << "  ... " << failed - shown << " more\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_table(long long Mmax, long long mmax) {
    if (Mmax < 2 || mmax < 1) throw std::invalid_argument("need Mmax >= 2 and mmax >= 1");
    // h is the module weight; s and q_lead describe the series head, which
    // opens as zeta^s q^{q_lead}
    std::cout << "M,m,m2,k1,k2,heart,sector,c,h,s,q_lead\n";
    for (long long M = 2; M <= Mmax; ++M)
        for (long long m = 1; m <= mmax; ++m) {
            if (std::gcd(M, m) != 1) continue;
            for (long long m2 = 0; m2 <= m - 1; ++m2)
                for (Heart h : {Heart::I, Heart::II, Heart::III, Heart::IV})
                    for (auto& [k1, k2] : omega_domain(M, h))
                        for (bool tw : {false, true}) {
                            ModuleLabel lab;
                            lab.M = M;
                            lab.m = m;
                            lab.m2 = m2;
                            lab.k1 = k1;
                            lab.k2 = k2;
                            lab.heart = h;
                            lab.algebra = Algebra::N4;
                            const Sector sec{true, tw};
                            const ConformalData raw = conformal_data_raw(lab, sec);
                            const ConformalData cal = conformal_data(lab, sec);
                            std::cout << M << "," << m << "," << m2 << "," << k1 << "," << k2
                                      << "," << heart_str(h) << "," << (tw ? "tw" : "untw")
                                      << "," << rat_str(raw.c) << "," << rat_str(raw.h) << ","
                                      << rat_str(cal.s) << "," << rat_str(Rat(cal.h - cal.c / 24))
                                      << "\n";
                        }
        }
    return 0;
}

ordered_json numeric_report(const std::string& check, const NumericCheck& c,
                            const ordered_json* label) {
    ordered_json doc;
    doc["check"] = check;
    if (label) doc["label"] = *label;
    doc["name"] = c.name;
    doc["lhs"] = ordered_json::array({c.lhs.real(), c.lhs.imag()});
    doc["rhs"] = ordered_json::array({c.rhs.real(), c.rhs.imag()});
    doc["abs_err"] = c.err();
    doc["tol"] = c.tol;
    doc["pass"] = c.pass;
    return doc;
}

int cmd_modular(const LabelFlags& lf, const std::string& check, const std::string& tau_s,
                const std::string& z_s, double tol, bool tol_given) {
    const cnum tau = parse_cnum(tau_s), z = parse_cnum(z_s);

    if (check == "aux") {
        const double atol = tol_given ? tol : 1e-9;
        const std::vector<NumericCheck> rows = aux_modular_checks(tau, z, atol);
        ordered_json arr = ordered_json::array();
        bool ok = true;
        for (const NumericCheck& c : rows) {
            arr.push_back(numeric_report("aux", c, nullptr));
            ok &= c.pass;
        }
        std::cout << arr.dump() << "\n";
        return ok ? 0 : 1;
    }

    const ModuleLabel lab = lf.label();
    const Sector sec = parse_sector_word(lf.sector);
    NumericCheck c;
    if (check == "S")
        c = s_check(lab, sec, tau, z, tol);
    else if (check == "T")
        c = t_check(lab, sec, tau, z, tol);
    else if (check == "SS")
        c = ss_check(lab, sec, tau, z, tol_given ? tol : 1e-7);
    else
        throw std::invalid_argument("check must be S, T, SS or aux");

    const ordered_json lj = label_json(normalize_heart(lab), sec);
    std::cout << numeric_report(check, c, &lj).dump() << "\n";
    return c.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact character expansions and their verification suites"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags win");
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    long long parallelism = 1;
    app.add_option("--parallelism", parallelism,
                   "accepted for config compatibility; evaluation is single-threaded");

    // expand
    auto* ex = app.add_subcommand("expand", "expand one character as an exact table");
    LabelFlags ex_lab;
    ex_lab.add_to(ex);
    std::string ex_qmax = "8", ex_format = "json";
    long long ex_window = 6;
    ex->add_option("--qmax", ex_qmax, "q-order bound, a rational like 8 or 17/2");
    ex->add_option("--window", ex_window, "zeta-window half-width (quotient family only)");
    ex->add_option("--format", ex_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // verify
    auto* vf = app.add_subcommand("verify", "run named verification suites");
    std::vector<std::string> vf_suites;
    std::string vf_qmax, vf_format = "text", vf_junit;
    long long vf_window = -1, vf_seed = 0;
    double vf_tol = 0;
    int vf_points = 0;
    vf->add_option("--suite", vf_suites, "suite names, or \"all\"")->delimiter(',');
    vf->add_option("--qmax", vf_qmax, "override every suite's q-order");
    vf->add_option("--window", vf_window, "override window half-width / grid bound");
    vf->add_option("--tol", vf_tol, "override numeric tolerance");
    vf->add_option("--points", vf_points, "override seeded point count");
    vf->add_option("--seed", vf_seed, "skip count into the seeded point stream");
    vf->add_option("--format", vf_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    vf->add_option("--junit", vf_junit, "also write a JUnit-style XML file here");

    // table
    auto* tb = app.add_subcommand("table", "CSV of conformal data across a grid");
    long long tb_Mmax = 4, tb_mmax = 3;
    tb->add_option("--Mmax", tb_Mmax, "largest period");
    tb->add_option("--mmax", tb_mmax, "largest level index");

    // modular
    auto* md = app.add_subcommand("modular", "numeric transformation spot-check");
    LabelFlags md_lab;
    md_lab.add_to(md, false);
    std::string md_check = "S", md_tau = "0.1+1.3i", md_z = "0.23+0.11i";
    double md_tol = 1e-8;
    md->add_option("--check", md_check, "S, T, SS or aux")
        ->check(CLI::IsMember({"S", "T", "SS", "aux"}));
    auto* md_tol_opt = md->add_option("--tol", md_tol, "absolute tolerance");
    md->add_option("--tau", md_tau, "upper-half-plane point, e.g. 0.1+1.3i");
    md->add_option("--z", md_z, "elliptic argument, e.g. 0.23+0.11i");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(ex)) return cmd_expand(ex_lab, ex_qmax, ex_window, ex_format);
        if (app.got_subcommand(vf)) {
            SuiteOptions opts;
            if (!vf_qmax.empty()) opts.qmax = rat_parse(vf_qmax);
            if (vf_window >= 0) opts.window = vf_window;
            if (vf_tol > 0) opts.tol = vf_tol;
            if (vf_points > 0) opts.points = vf_points;
            opts.seed = vf_seed;
            return cmd_verify(vf_suites, opts, vf_format, vf_junit);
        }
        if (app.got_subcommand(tb)) return cmd_table(tb_Mmax, tb_mmax);
        if (app.got_subcommand(md))
            return cmd_modular(md_lab, md_check, md_tau, md_z, md_tol, md_tol_opt->count() > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
