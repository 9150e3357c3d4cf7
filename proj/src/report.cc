#include "drham/report.hpp"

#include <json.hpp>

#include <sstream>

namespace drham {

bool Report::all_pass() const {
    for (auto &c : checks)
        if (!c.pass) return false;
    return true;
}

int Report::failures() const {
    int n = 0;
    for (auto &c : checks)
        if (!c.pass) ++n;
    return n;
}

std::string Report::render() const {
    std::ostringstream os;
    os << "== " << target << " ==\n";
    for (auto &c : checks) {
        os << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  [" << c.scope << "]";
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    os << (all_pass() ? "all checks passed" : std::to_string(failures()) + " check(s) failed") << "\n";
    return os.str();
}

std::string Report::to_json(bool with_timings) const {
    nlohmann::json j;
    j["schema"] = "drham-report/1";
    j["target"] = target;
    j["seed"] = seed;
    j["two_g_max"] = two_g_max;
    nlohmann::json arr = nlohmann::json::array();
    for (auto &c : checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["scope"] = c.scope;
        cj["verdict"] = c.pass ? "pass" : "fail";
        if (!c.detail.empty()) cj["residual"] = c.detail;
        if (with_timings) cj["wall_ms"] = c.wall_ms;
        arr.push_back(cj);
    }
    j["checks"] = arr;
    j["failures"] = failures();
    return j.dump(1) + "\n";
}

} // namespace drham
