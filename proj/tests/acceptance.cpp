// Runs the ten acceptance suites and prints one line per criterion.

#include "csurg/verification.hpp"

#include <iostream>

int main()
{
    const csurg::SuiteConfig config = csurg::SuiteConfig::from_environment();
    int failed = 0;
    csurg::run_all(config, [&](const csurg::SuiteResult& r) {
        std::cout << csurg::format_result(r) << std::endl;
        failed += r.passed ? 0 : 1;
    });
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
