#ifndef DRHAM_REPORT_HPP
#define DRHAM_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace drham {

struct CheckResult {
    std::string name;
    std::string scope; // "exact" or "eps-order k"
    bool pass = false;
    std::string detail;
    double wall_ms = 0.0;
};

struct Report {
    std::string target;
    uint64_t seed = 0;
    int two_g_max = 6;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    int failures() const;
    /// Human-readable table.
    std::string render() const;
    /// JSON document, schema "drham-report/1". Timings are included only on
    /// request so that reports stay byte-identical across runs.
    std::string to_json(bool with_timings = false) const;
};

} // namespace drham

#endif
