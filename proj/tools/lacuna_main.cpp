#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lacuna/cli.hpp"

namespace {

using lacuna::cli::RunConfig;

// key=value lines; '#' starts a comment. CLI flags override config values.
std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

struct ParamSpec {
  std::string flag;       // long flag name, also the config-file key
  std::string kind;       // int | float | string | uint
  std::string help;
  std::string fallback;   // empty = required unless the command defaults it
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"gapset",
       "Fourth-vs-second moment ratio of central polynomials on the gap set, "
       "with the certified constant",
       {{"q", "float", "deformation parameter in (0,1)", ""},
        {"count", "int", "number of gap-set labels", ""},
        {"n0", "int", "gap-set seed label", "0"},
        {"first-n", "int", "restrict coefficients to the first N labels", ""},
        {"trials", "int", "random unit coefficient vectors", "10000"},
        {"multistarts", "int", "projected-gradient ascent starts", "16"}}},
      {"norms",
       "Norm evaluations (op: central-l2 | central-l4 | central-sup | l1-dual | gns)",
       {{"op", "string", "which norm", ""},
        {"q", "float", "deformation parameter", ""},
        {"coeffs", "string", "central coefficients JSON, e.g. '{\"1\":[1,0]}'", ""},
        {"grid", "int", "theta grid for central-sup", "256"},
        {"poly", "string", "generator polynomial, e.g. '(1+0i)*a g* g'", ""},
        {"trunc", "int", "GNS truncation", "64"},
        {"theta-grid", "int", "GNS theta grid", "256"}}},
      {"extract",
       "Greedy orthogonal-system extraction with certified constant and ratio check",
       {{"N", "int", "matrix dimension", "16"},
        {"n", "int", "moment order (p = 2n)", "2"},
        {"target", "int", "selection size", "8"},
        {"family", "string", "matrix-units | fourier-unitaries | random-gs", "matrix-units"},
        {"count", "int", "family size for random-gs", ""},
        {"rho", "string", "'random' or path to a state JSON file", "random"},
        {"rho-seed", "uint", "seed for the random state", ""},
        {"trials", "int", "coefficient vectors for the ratio check", "1000"}}},
      {"khintchine",
       "Random-sign averages vs the square-function norm",
       {{"N", "int", "matrix dimension", "6"},
        {"m", "int", "family size", "8"},
        {"p", "float", "exponent >= 2", "2"},
        {"exhaustive-up-to", "int", "enumerate all sign patterns up to this m", "12"},
        {"trials", "int", "Monte-Carlo patterns when not exhaustive", "10000"},
        {"rho", "string", "'random' or path to a state JSON file", "random"},
        {"rho-seed", "uint", "seed for the random state", ""}}},
      {"sidon-fund",
       "Unconditionality ratios of the fundamental corepresentation",
       {{"q", "float", "deformation parameter in (0,1)", ""},
        {"trials", "int", "random (A, V) pairs", "100"},
        {"trunc", "int", "GNS truncation", "64"},
        {"theta-grid", "int", "GNS theta grid", "256"},
        {"tol", "float", "truncation slack on the certified bound", "0.05"}}},
      {"screen-q",
       "Modular-matrix boundedness screening over a label set",
       {{"q", "float", "deformation parameter", ""},
        {"labels", "string", "semicolon-separated labels, e.g. '0;1;3'", ""},
        {"gapset-count", "int", "use the gap set with this many labels", ""},
        {"n0", "int", "gap-set seed label", "0"},
        {"threshold", "float", "screening threshold", ""}}},
      {"contrast",
       "Fourth-moment growth table: linear at q = 1, bounded for q < 1",
       {{"q", "float", "deformation parameter", ""},
        {"n-max", "int", "largest character level", "40"}}},
      {"probe",
       "Scalar central multiplier norm on a label set",
       {{"q", "float", "deformation parameter", ""},
        {"labels", "string", "semicolon-separated labels", ""},
        {"gapset-count", "int", "use the gap set with this many labels", ""},
        {"n0", "int", "gap-set seed label", "0"},
        {"symbol", "string", "scalar symbol JSON, e.g. '{\"0\":[1,0]}'", ""},
        {"p", "int", "2 or 4", "2"},
        {"trials", "int", "random coefficient vectors", "10000"}}},
  };
  return specs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacuna: Fourier analysis and lacunary-set experiments on q-deformed SU(2)"};
  app.require_subcommand(0, 1);

  // Pre-scan for --config so its values become defaults the flags override.
  std::map<std::string, std::string> file_defaults;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        file_defaults = load_config_file(argv[i + 1]);
      } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  std::string config_path;
  app.add_option("--config", config_path, "key=value defaults file (flags win)");

  struct PendingRun {
    RunConfig cfg;
    CLI::App* sub = nullptr;
    std::map<std::string, std::pair<std::string, std::string>> values;  // flag -> (kind, value)
  };
  std::vector<PendingRun> pending(command_specs().size());

  std::size_t spec_idx = 0;
  for (const auto& spec : command_specs()) {
    PendingRun& run = pending[spec_idx++];
    run.cfg.command = spec.name;
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    run.sub = sub;
    for (const auto& p : spec.params) {
      auto& slot = run.values[p.flag];
      slot.first = p.kind;
      if (auto it = file_defaults.find(p.flag); it != file_defaults.end())
        slot.second = it->second;
      else
        slot.second = p.fallback;
      auto* opt = sub->add_option("--" + p.flag, slot.second, p.help);
      if (!slot.second.empty()) opt->capture_default_str();
    }
    // Common output controls.
    sub->add_option("--seed", run.cfg.seed, "RNG seed")->capture_default_str();
    if (auto it = file_defaults.find("seed"); it != file_defaults.end())
      run.cfg.seed = std::stoull(it->second);
    sub->add_option("--out", run.cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", run.cfg.format, "json | csv")->capture_default_str();
    sub->add_flag("--timing", run.cfg.timing, "include wall-clock runtime in the report");
    sub->add_flag("--per-trial", run.cfg.per_trial, "CSV: one row per trial statistic");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
    return 1;
  }

  for (auto& run : pending) {
    if (!run.sub->parsed()) continue;
    for (const auto& [flag, slot] : run.values) {
      const auto& [kind, value] = slot;
      if (value.empty()) continue;
      try {
        if (kind == "int")
          run.cfg.params[flag] = std::stoi(value);
        else if (kind == "float")
          run.cfg.params[flag] = std::stod(value);
        else if (kind == "uint")
          run.cfg.params[flag] = std::stoull(value);
        else
          run.cfg.params[flag] = value;
      } catch (const std::exception&) {
        std::cerr << "error: flag --" << flag << " expects a " << kind << " value\n";
        return 1;
      }
    }
    return lacuna::cli::run(run.cfg);
  }

  std::cout << app.help();
  return 0;
}
