#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace lacuna::cli {

inline constexpr std::uint64_t kDefaultSeed = 1729;

// One batch run: a command name, its typed parameter map, and output
// controls. Unknown parameter keys are rejected. The fixed default seed
// keeps unseeded runs reproducible.
struct RunConfig {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;        // empty writes to stdout
  std::string format = "json"; // json | csv
  bool timing = false;         // include wall-clock runtime in the report
  bool per_trial = false;      // CSV: one row per trial statistic
};

// Executes the command and renders the report. Exit status: 0 on success,
// 1 on input errors, 2 when a certified numerical contract is violated
// (never silently). When `output` is non-null the rendered document is also
// stored there.
int run(const RunConfig& config, std::string* output = nullptr);

}  // namespace lacuna::cli
