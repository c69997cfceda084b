#pragma once

#include <functional>
#include <string>
#include <vector>

namespace popsim::verify {

/// Outcome of one acceptance criterion (or extra property, id 0).  The
/// detail string carries the measured values next to their thresholds so a
/// failure is diagnosable from the one-line report alone.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Receives one short line per completed stage; may be empty.
using ProgressFn = std::function<void(const std::string&)>;

/// Themed blocks.  Each returns one result per criterion it owns.
std::vector<CriterionResult> verify_safety(const ProgressFn& progress);
std::vector<CriterionResult> verify_fast_whp(const ProgressFn& progress);
std::vector<CriterionResult> verify_runtime(const ProgressFn& progress);
std::vector<CriterionResult> verify_epidemic(const ProgressFn& progress);
std::vector<CriterionResult> verify_junta(const ProgressFn& progress);
std::vector<CriterionResult> verify_clock(const ProgressFn& progress);
std::vector<CriterionResult> verify_slow(const ProgressFn& progress);
std::vector<CriterionResult> verify_audit(const ProgressFn& progress);
std::vector<CriterionResult> verify_robustness(const ProgressFn& progress);
std::vector<CriterionResult> verify_oracle(const ProgressFn& progress);

struct SuiteSpec {
    const char* name;
    std::vector<CriterionResult> (*fn)(const ProgressFn&);
};

/// All suites in report order.
const std::vector<SuiteSpec>& all_suites();

/// Runs one named suite, or every suite for "all".  Unknown names return an
/// empty vector.
std::vector<CriterionResult> run_suites(const std::string& name,
                                        const ProgressFn& progress);

/// "[PASS] criterion 4: epidemic expectation - mean 123081.7 vs oracle ..."
std::string format_result(const CriterionResult& r);

} // namespace popsim::verify
