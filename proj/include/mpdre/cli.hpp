#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpdre/semigroup.hpp"

namespace mpdre {

// Parsed command line. Exit codes: 0 success, 1 numeric or existence
// failure, 2 usage or parse failure.
struct RunConfig {
    std::string command;      // check | semigroup | solve | verify | kernel
    std::string input_path;
    std::string output_path;  // empty = stdout
    std::vector<int> horizons;
    Strategy strategy = Strategy::doubling;
    std::optional<double> rtol;
    std::string p0_spec;
    std::string grid_spec;
    std::vector<std::string> kinds;  // semigroup export kinds
    std::string ray_spec;
    bool limit_sweep = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

// Dispatches one command; exceptions are mapped to exit codes and a
// structured diagnostic on the error stream.
int run_command(const RunConfig& config);

}  // namespace mpdre
