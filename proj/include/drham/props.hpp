#ifndef DRHAM_PROPS_HPP
#define DRHAM_PROPS_HPP

#include "drham/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace drham {

/// A seeded property suite: runs `cases` random instances and reports; on a
/// failure, greedily shrinks the counterexample before printing it.
struct PropertySuite {
    std::string name;
    std::function<CheckResult(uint64_t seed, int cases)> run;
};

const std::vector<PropertySuite> &property_suites();

/// Runs either every suite or the named one.
std::vector<CheckResult> run_property_suites(uint64_t seed, int cases, const std::string &only = "");

} // namespace drham

#endif
