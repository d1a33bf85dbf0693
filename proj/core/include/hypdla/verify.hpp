#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypdla::verify {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    double wall_seconds = 0.0;

    bool all_pass() const;
    std::string text() const;
};

/// Knobs for lighter CLI runs. runs scales the replicate counts of the
/// statistical suites (0 keeps the full budgets); the seed offsets every
/// internal seed so suites stay reproducible yet re-runnable.
struct VerifyOptions {
    int runs = 0;
    std::uint64_t seed = 20260808;
    int threads = 1;
};

SuiteResult geometry_suite(const VerifyOptions& opts = {});
SuiteResult boundary_suite(const VerifyOptions& opts = {});
SuiteResult walker_suite(const VerifyOptions& opts = {});
SuiteResult harmonic_suite(const VerifyOptions& opts = {});
SuiteResult growth_suite(const VerifyOptions& opts = {});
SuiteResult theorem4_suite(const VerifyOptions& opts = {});
SuiteResult density_suite(const VerifyOptions& opts = {});

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts = {});
std::vector<std::string> suite_names();

}  // namespace hypdla::verify
