#pragma once

#include "charq/series.hpp"

#include <string>
#include <vector>

namespace charq {

// One named verification with a machine-readable outcome.  `detail` carries
// the first counterexample (exponents + both coefficients) when pass=false.
struct CheckResult {
    std::string name;
    bool pass{true};
    std::string detail;
};

inline CheckResult check_from(const std::string& name, const MismatchReport& r) {
    return {name, r.equal, r.equal ? std::string{} : r.str()};
}

inline bool all_pass(const std::vector<CheckResult>& v) {
    for (const auto& c : v)
        if (!c.pass) return false;
    return true;
}

}  // namespace charq
