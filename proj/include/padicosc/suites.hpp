#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicosc/report.hpp"

namespace padicosc {

struct SuiteOptions {
    int cases = -1;  // negative: the suite's default
    std::uint64_t seed = 7;
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;  // first failures, in case order
    Json metrics = Json::object();

    bool passed() const { return failures == 0 && cases > 0; }
};

/// ultrametric, lambda, gauss-oracle, ode-residual, action-equality, composition, vacuum, discreteness.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument for unknown names.
/// Cases run across workers; results are reduced in case order, so output depends only on the options.
std::vector<SuiteResult> run_suite(const std::string& name, const SuiteOptions& options = {});

Json suite_json(const std::vector<SuiteResult>& results, const SuiteOptions& options);

}  // namespace padicosc
