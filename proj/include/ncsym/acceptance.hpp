#pragma once

#include "ncsym/io.hpp"

#include <string>
#include <vector>

namespace ncsym {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;     ///< all checks held and the run stayed inside the time budget
    bool checks_ok = false;
    double seconds = 0;
    double budget = 0;     ///< seconds; 0 when the criterion has no time limit
    Json details;
};

constexpr int kCriteria = 8;

/// Runs criterion 1..8; exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);
/// All criteria, at most `threads` at a time; results in id order.
std::vector<CriterionResult> run_all(int threads = 1);
/// NCSYM_THREADS, clamped to [1, hardware concurrency]; 1 when unset or malformed.
int thread_cap_from_env();

/// Timings are left out unless asked for, so the default output is reproducible.
Json to_json(const CriterionResult& r, bool timing = false);

}  // namespace ncsym
