#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wentzell {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = true;
};

/// Runs the full verification suite (one entry per acceptance criterion),
/// printing one PASS/FAIL line per criterion to `log`.
AcceptanceResult run_acceptance(std::uint64_t seed, std::ostream& log);

}  // namespace wentzell
