#include "lacuna/report.hpp"

#include <cmath>
#include <cstdio>

namespace lacuna {

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::ordered_json report_to_json(const LacunaReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["estimate"] = r.estimate;
  j["certified"] = r.certified ? nlohmann::ordered_json(*r.certified)
                               : nlohmann::ordered_json(nullptr);
  j["margin"] = r.margin() ? nlohmann::ordered_json(*r.margin())
                           : nlohmann::ordered_json(nullptr);
  j["seed"] = r.seed;
  j["runtime_ms"] = include_timing ? r.runtime_ms : 0;
  return j;
}

std::string report_to_csv(const LacunaReport& r, bool include_timing, bool per_trial) {
  std::string out = "statistic,value\n";
  out += "command," + r.command + "\n";
  for (const auto& [k, v] : r.params.items()) {
    out += "param." + k + ",";
    out += v.is_number_float() ? format_sig(v.get<double>()) : v.dump();
    out += "\n";
  }
  out += "estimate," + format_sig(r.estimate) + "\n";
  if (r.certified) {
    out += "certified," + format_sig(*r.certified) + "\n";
    out += "margin," + format_sig(*r.margin()) + "\n";
  }
  out += "seed," + std::to_string(r.seed) + "\n";
  out += "runtime_ms," + std::to_string(include_timing ? r.runtime_ms : 0) + "\n";
  if (per_trial) {
    for (std::size_t i = 0; i < r.per_trial.size(); ++i)
      out += "trial." + std::to_string(i) + "," + format_sig(r.per_trial[i]) + "\n";
  }
  return out;
}

std::string table_to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json table_to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.header.size() && i < row.size(); ++i)
      r[t.header[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace lacuna
