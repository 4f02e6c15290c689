#pragma once

#include <string>
#include <vector>

namespace dnls {

struct SelfCheck {
    std::string name;
    bool passed = false;
    double value = 0;      // measured defect or count
    double threshold = 0;  // passes when value <= threshold, unless noted in detail
    std::string detail;
};

// Fast invariant suite over every module. Seeded, no timings, so the report
// is byte-identical between runs.
std::vector<SelfCheck> run_selftest();

std::string selftest_json(const std::vector<SelfCheck>& checks);

} // namespace dnls
