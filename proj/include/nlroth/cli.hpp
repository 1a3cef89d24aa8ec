#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nlroth::cli {

/// Shared experiment knobs, loadable from a JSON file (--config). Unknown
/// keys are rejected; numeric fields are range-checked.
struct ExperimentConfig {
    std::int64_t n = 0;  // 0 = unset
    std::int64_t q = 1;
    double delta = 0.1;
    double c = 0.01;
    std::uint64_t seed = 0;
    std::int64_t max_dimension = 16;
    std::int64_t max_stages = 32;
    std::int64_t modulus_cap = std::int64_t{1} << 32;
    int threads = 1;
    std::string format = "json";  // json | csv
    std::string out;
};

ExperimentConfig load_config(const std::filesystem::path& path);

/// Runs one subcommand: count | free-check | cutnorm | regularize |
/// increment | iterate | search-extremal | example1 | spectrum | weyl |
/// moment6 | majorarc. Args exclude the program name.
/// Exit codes: 0 success, 1 labeled analytic failure (e.g. no increment
/// found), 2 usage error.
int dispatch(std::vector<std::string> args);

}  // namespace nlroth::cli
