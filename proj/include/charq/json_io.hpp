#pragma once

// JSON interchange for exact series.  All numbers are strings ("num/den") so
// round-trips are lossless; term order is (q, zeta) lexicographic, which makes
// emitted documents byte-stable.

#include "charq/series.hpp"
#include "charq/window.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace charq {

using ordered_json = nlohmann::ordered_json;

inline ordered_json term_json(const Rat& qe, const Rat& ze, const GaussRat& c) {
    ordered_json t;
    t["q"] = rat_str(qe);
    t["zeta"] = rat_str(ze);
    t["re"] = rat_str(c.re);
    t["im"] = rat_str(c.im);
    return t;
}

inline ordered_json to_json(const PolySeries& s) {
    ordered_json j;
    j["qmax"] = rat_str(s.qmax);
    j["min_q"] = rat_str(s.min_q());
    ordered_json terms = ordered_json::array();
    for (auto& [qe, p] : s.t)
        for (auto& [ze, c] : p.terms()) terms.push_back(term_json(qe, ze, c));
    j["terms"] = std::move(terms);
    return j;
}

inline ordered_json to_json(const WindowSeries& s) {
    ordered_json j;
    j["qmax"] = rat_str(s.qmax);
    j["min_q"] = rat_str(s.min_q());
    j["window"] = ordered_json{{"lo", rat_str(s.t_lo)}, {"hi", rat_str(s.z_top)}};
    ordered_json terms = ordered_json::array();
    for (auto& [qe, p] : s.t)
        for (auto& [ze, c] : p.terms()) terms.push_back(term_json(qe, ze, c));
    j["terms"] = std::move(terms);
    return j;
}

inline PolySeries poly_from_json(const ordered_json& j) {
    PolySeries s;
    s.qmax = rat_parse(j.at("qmax").get<std::string>());
    for (auto& t : j.at("terms")) {
        s.add_term(rat_parse(t.at("q").get<std::string>()),
                   rat_parse(t.at("zeta").get<std::string>()),
                   GaussRat(rat_parse(t.at("re").get<std::string>()),
                            rat_parse(t.at("im").get<std::string>())));
    }
    return s;
}

inline WindowSeries window_from_json(const ordered_json& j) {
    WindowSeries s;
    s.qmax = rat_parse(j.at("qmax").get<std::string>());
    s.t_lo = rat_parse(j.at("window").at("lo").get<std::string>());
    s.z_top = rat_parse(j.at("window").at("hi").get<std::string>());
    for (auto& t : j.at("terms")) {
        s.add_term(rat_parse(t.at("q").get<std::string>()),
                   rat_parse(t.at("zeta").get<std::string>()),
                   GaussRat(rat_parse(t.at("re").get<std::string>()),
                            rat_parse(t.at("im").get<std::string>())));
    }
    return s;
}

}  // namespace charq
