#pragma once

// The acceptance suites, shared by the acceptance test binary and the
// `verify-all` command.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace csurg {

struct SuiteConfig {
    /// Instance count for property suites; each suite uses at least its
    /// own minimum.
    std::size_t property_instances = 1000;
    std::size_t depth = 4;
    int t_max = 6;
    std::uint64_t seed = 1;

    /// CSURG_PROPERTY_INSTANCES, CSURG_DEPTH, CSURG_TMAX, CSURG_SEED.
    static SuiteConfig from_environment();
};

struct SuiteResult {
    int criterion = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    std::vector<std::string> failures;
    double seconds = 0;
    double limit_seconds = 0;
};

/// "PASS  3  move invariance ... (1.20 s, limit 60 s)" plus failure lines.
std::string format_result(const SuiteResult& r);

constexpr int kSuiteCount = 10;

SuiteResult run_suite(int criterion, const SuiteConfig& config);

/// Runs every suite in order, reporting each as soon as it finishes.
std::vector<SuiteResult> run_all(const SuiteConfig& config,
                                 const std::function<void(const SuiteResult&)>& on_result = {});

}  // namespace csurg
