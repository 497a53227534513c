#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ridgeframe::selftest {

struct Config {
    std::uint64_t seed = 20240611;
    bool quick = false;
    /// Sigmoid for every Meyer generator in the suite; "skewed" is the
    /// mutation fixture and must make the suite fail.
    std::string meyer_nu = "poly7";
    /// Criteria to run (1..12); empty runs all of them.
    std::vector<int> only;
};

struct Result {
    int id = 0;
    std::string name;
    bool numeric_pass = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string note;
    double seconds = 0.0;
    double budget = 0.0;

    bool within_budget() const { return seconds < budget; }
    bool pass() const { return numeric_pass && within_budget(); }
    /// Deterministic line: no timing.
    std::string report() const;
};

/// Runs the selected criteria in order. Criterion 12 re-runs 1..11 at a
/// different thread count and compares their report lines.
std::vector<Result> run(const Config& cfg, const std::function<void(const Result&)>& progress = {});

/// One criterion in isolation (1..11).
Result run_one(int id, const Config& cfg);

std::string junit_xml(const std::vector<Result>& results);

bool all_pass(const std::vector<Result>& results);

}  // namespace ridgeframe::selftest
