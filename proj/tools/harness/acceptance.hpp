#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace hkloost {
class ResultCache;
}

namespace hkloost::harness {

struct AcceptanceOptions {
    unsigned threads = 1;
    ResultCache* cache = nullptr;
    std::set<int> only;  // empty = all criteria
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs acceptance criteria 1-8. When progress is non-null each result line is printed as soon
/// as the criterion finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress = nullptr);

std::string format_line(const CriterionResult& r);
void print_table(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace hkloost::harness
