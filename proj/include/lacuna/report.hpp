#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lacuna {

// Result of an estimation run: the headline statistic, the certified bound
// when one exists, and enough bookkeeping to reproduce the run. The
// invariant estimate <= certified is what the CLI enforces with exit
// status 2.
struct LacunaReport {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double estimate = 0.0;
  std::optional<double> certified;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  std::vector<double> per_trial;  // optional per-trial statistics

  std::optional<double> margin() const {
    if (!certified) return std::nullopt;
    return *certified - estimate;
  }
  bool violated() const { return certified && estimate > *certified; }
};

// Fixed field order {command, params, estimate, certified, margin, seed,
// runtime_ms}. Timing is zeroed unless include_timing is set, so identical
// runs emit byte-identical documents.
nlohmann::ordered_json report_to_json(const LacunaReport& r, bool include_timing = false);

// CSV rendering: one "statistic,value" row per field, floats with 12
// significant digits; per-trial statistics append one row per trial.
std::string report_to_csv(const LacunaReport& r, bool include_timing = false,
                          bool per_trial = false);

// Simple table (used by list-producing commands).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string table_to_csv(const Table& t);
nlohmann::ordered_json table_to_json(const Table& t);

std::string format_sig(double v);  // 12 significant digits

}  // namespace lacuna
