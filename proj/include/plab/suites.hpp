#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "plab/equality.hpp"
#include "plab/errors.hpp"

namespace plab {

struct SuiteParams {
    std::vector<int> n_values{3};
    int trials = 500;
    std::uint64_t seed = 7;
    long budget = 500;
    std::vector<Scalar> lambda_set = default_lambda_set();
    int workers = 1;
};

/// Thrown by a suite body when a property check fails. Carries a dump of the
/// drawn instance so the trial can be replayed from the report alone.
struct SuiteFailure : Error {
    SuiteFailure(const std::string& what, nlohmann::json instance_);
    nlohmann::json instance;
};

struct SuiteInfo {
    const char* name;
    int min_n; // 2 for the rank-one product lemmas, 3 for theorem-level suites
    void (*trial)(int n, Rng& rng, const SuiteParams& params);
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& name); // nullptr when unknown

struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<int> n_values;
    long trials = 0; // total across all n values; passes + failures == trials
    long passes = 0;
    std::vector<nlohmann::json> failures;
    long wall_time_ms = 0;
};

nlohmann::json run_report_to_json(const RunReport& r);

/// Runs params.trials trials per n on a pool of params.workers threads.
/// Trial i (global across n values) draws from Rng(seed ^ i), so the outcome
/// is independent of scheduling; failures are reported in trial order.
RunReport run_suite(const SuiteInfo& suite, const SuiteParams& params);

} // namespace plab
