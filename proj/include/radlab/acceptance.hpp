#pragma once

#include <string>
#include <vector>

namespace radlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs one acceptance criterion (1..15).
CriterionResult run_criterion(int id);

int criterion_count();
std::string criterion_name(int id);

// ids for the named verify suites: "appendix", "quick", "all"
std::vector<int> suite_ids(const std::string& suite);

}  // namespace radlab
