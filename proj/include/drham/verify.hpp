#ifndef DRHAM_VERIFY_HPP
#define DRHAM_VERIFY_HPP

#include "drham/report.hpp"

#include <cstdint>
#include <string>

namespace drham {

struct RunConfig {
    int two_g_max = 6;     // eps truncation order, even and >= 2
    int pdo_depth = 0;     // 0 = automatic
    uint64_t seed = 7349;  // property-test seed
    int cases = 50;        // property-test cases
    int d_max = 3;         // recursion depth for the hierarchy checks
    int jobs = 1;          // worker threads for independent checks
    std::string g_file;    // external density for the 5-spin comparison
    std::string suite;     // restrict the property run
    bool timings = false;  // include wall times in the JSON report

    void validate() const;
};

Report verify_target(const std::string &target, const RunConfig &cfg);
Report run_properties(const RunConfig &cfg);

} // namespace drham

#endif
