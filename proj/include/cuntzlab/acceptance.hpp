#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cuntzlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs acceptance criteria 1..10 (or only `only` when nonzero).
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, int only = 0);

/// One "PASS"/"FAIL" line per criterion.
std::string format_acceptance(const std::vector<CriterionResult>& results);

}  // namespace cuntzlab
