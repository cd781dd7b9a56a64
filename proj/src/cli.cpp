#include "lacuna/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "lacuna/central.hpp"
#include "lacuna/finvn.hpp"
#include "lacuna/fourier.hpp"
#include "lacuna/gns.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/report.hpp"
#include "lacuna/rng.hpp"

namespace lacuna::cli {

namespace {

using nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_keys(const ordered_json& params, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : params.items()) {
    if (!allowed.count(key))
      throw InputError("unknown parameter '" + key + "'");
  }
}

template <typename T>
T get_or(const ordered_json& params, const std::string& key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError("parameter '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_required(const ordered_json& params, const std::string& key) {
  if (!params.contains(key)) throw InputError("missing required parameter '" + key + "'");
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError("parameter '" + key + "' has the wrong type");
  }
}

CentralPoly central_poly_from_params(const ordered_json& params) {
  const double q = get_required<double>(params, "q");
  ordered_json j;
  j["q"] = q;
  if (params.contains("coeffs") && params.at("coeffs").is_string())
    j["coeffs"] = nlohmann::json::parse(params.at("coeffs").get<std::string>());
  else
    j["coeffs"] = params.at("coeffs");
  return central_from_json(j);
}

std::map<int, Complex> scalar_map_from_json(const nlohmann::json& j) {
  std::map<int, Complex> out;
  for (const auto& [key, val] : j.items()) {
    const auto pair = val.get<std::vector<double>>();
    if (pair.size() != 2) throw InputError("scalar map entries must be [re, im]");
    out[std::stoi(key)] = Complex(pair[0], pair[1]);
  }
  return out;
}

IrrepSet set_from_params(const ordered_json& params) {
  const double q = get_required<double>(params, "q");
  const QuantumGroupModel model = QuantumGroupModel::single(q);
  if (params.contains("labels")) {
    std::vector<IrrepLabel> labels;
    std::stringstream ss(params.at("labels").get<std::string>());
    std::string item;
    while (std::getline(ss, item, ';')) labels.push_back(IrrepLabel::parse(item));
    return IrrepSet(model, std::move(labels));
  }
  const int count = get_or<int>(params, "gapset-count", 8);
  return gap_set(model, count, get_or<int>(params, "n0", 0));
}

StateAlgebra algebra_from_params(const ordered_json& params, int n, std::uint64_t seed) {
  const std::string rho = get_or<std::string>(params, "rho", "random");
  if (rho == "random") return random_state(n, seed);
  std::ifstream in(rho);
  if (!in) throw InputError("cannot open rho file '" + rho + "'");
  nlohmann::json j;
  in >> j;
  return algebra_from_json(j);
}

struct CommandResult {
  LacunaReport report;
  std::optional<Table> table;  // table-producing commands
  int status = 0;
};

CommandResult run_gapset(const RunConfig& cfg) {
  require_keys(cfg.params, {"q", "count", "n0", "first-n", "trials", "multistarts"});
  const double q = get_required<double>(cfg.params, "q");
  const int count = get_required<int>(cfg.params, "count");
  const IrrepSet set = gap_set(QuantumGroupModel::single(q), count,
                               get_or<int>(cfg.params, "n0", 0));
  CommandResult out;
  out.report = central_lambda4_ratio(set, get_or<int>(cfg.params, "first-n", count),
                                     get_or<int>(cfg.params, "trials", 10000),
                                     get_or<int>(cfg.params, "multistarts", 16), cfg.seed);
  out.report.command = "gapset";
  out.report.params["count"] = count;
  if (out.report.violated()) out.status = 2;
  return out;
}

CommandResult run_norms(const RunConfig& cfg) {
  const std::string op = get_required<std::string>(cfg.params, "op");
  CommandResult out;
  out.report.command = "norms." + op;
  out.report.seed = cfg.seed;
  if (op == "central-l2" || op == "central-l4" || op == "central-sup" || op == "l1-dual") {
    require_keys(cfg.params, {"op", "q", "coeffs", "grid"});
    const CentralPoly f = central_poly_from_params(cfg.params);
    out.report.params["q"] = f.q();
    out.report.params["coeffs"] = to_json(f)["coeffs"];
    if (op == "central-l2") {
      out.report.estimate = central_l2(f);
    } else if (op == "central-l4") {
      out.report.estimate = central_l4(f);
    } else if (op == "central-sup") {
      const SupNormResult r = central_sup_norm(f, get_or<int>(cfg.params, "grid", 256));
      out.report.estimate = r.value;
      out.report.params["grid_error"] = r.grid_error;
    } else {
      out.report.estimate = l1_dual_norm(to_fourier(f));
    }
  } else if (op == "gns") {
    require_keys(cfg.params, {"op", "q", "poly", "trunc", "theta-grid"});
    const GeneratorPoly p = GeneratorPoly::parse(get_required<std::string>(cfg.params, "poly"));
    out.report.estimate =
        gns_norm_estimate(p, get_required<double>(cfg.params, "q"),
                          get_or<int>(cfg.params, "trunc", 64),
                          get_or<int>(cfg.params, "theta-grid", 256));
    out.report.params["q"] = get_required<double>(cfg.params, "q");
    out.report.params["poly"] = p.str();
  } else {
    throw InputError("unknown norms op '" + op + "'");
  }
  return out;
}

CommandResult run_extract(const RunConfig& cfg) {
  require_keys(cfg.params, {"N", "n", "target", "family", "count", "rho", "rho-seed", "trials"});
  const int n_dim = get_or<int>(cfg.params, "N", 16);
  const int order = get_or<int>(cfg.params, "n", 2);
  const int target = get_or<int>(cfg.params, "target", 8);
  const int trials = get_or<int>(cfg.params, "trials", 1000);
  const std::string family = get_or<std::string>(cfg.params, "family", "matrix-units");

  const StateAlgebra algebra =
      algebra_from_params(cfg.params, n_dim, get_or<std::uint64_t>(cfg.params, "rho-seed", cfg.seed));
  std::vector<CMat> raw;
  if (family == "matrix-units")
    raw = family_matrix_units(n_dim);
  else if (family == "fourier-unitaries")
    raw = family_fourier_unitaries(n_dim);
  else if (family == "random-gs")
    raw = family_random_gaussian(n_dim, get_or<int>(cfg.params, "count", n_dim * n_dim),
                                 cfg.seed ^ 0xF00DULL);
  else
    throw InputError("unknown family '" + family + "'");

  const OrthoSystem ortho = gram_schmidt_phi(algebra, raw, true);
  const GreedySelection sel = greedy_lambda_select(ortho, order, target);
  const double audit = greedy_threshold_audit(ortho, sel);

  std::vector<CMat> picked;
  for (int idx : sel.indices) picked.push_back(ortho.elements[static_cast<std::size_t>(idx)]);
  const double ratio = lambda_ratio_check(algebra, picked, 2.0 * order, trials, cfg.seed);

  CommandResult out;
  out.report.command = "extract";
  out.report.params["N"] = n_dim;
  out.report.params["n"] = order;
  out.report.params["target"] = target;
  out.report.params["family"] = family;
  out.report.params["selected"] = sel.indices;
  out.report.params["k_bound"] = sel.k_bound;
  out.report.params["log_certified"] = sel.log_constant;
  out.report.params["audit_margin"] = audit;
  out.report.params["complete"] = sel.complete;
  out.report.seed = cfg.seed;
  out.report.estimate = ratio;
  out.report.certified = sel.constant;
  if (out.report.violated() || audit < -1e-12) out.status = 2;
  return out;
}

CommandResult run_khintchine(const RunConfig& cfg) {
  require_keys(cfg.params, {"N", "m", "p", "exhaustive-up-to", "trials", "rho", "rho-seed"});
  const int n_dim = get_or<int>(cfg.params, "N", 6);
  const int m = get_or<int>(cfg.params, "m", 8);
  const double p = get_or<double>(cfg.params, "p", 2.0);
  const StateAlgebra algebra =
      algebra_from_params(cfg.params, n_dim, get_or<std::uint64_t>(cfg.params, "rho-seed", cfg.seed));
  const std::vector<CMat> xs = family_random_gaussian(n_dim, m, cfg.seed ^ 0xBEEFULL);
  const KhintchineResult r =
      khintchine_sample(algebra, xs, p, get_or<int>(cfg.params, "exhaustive-up-to", 12),
                        get_or<int>(cfg.params, "trials", 10000), cfg.seed);

  CommandResult out;
  out.report.command = "khintchine";
  out.report.params["N"] = n_dim;
  out.report.params["m"] = m;
  out.report.params["p"] = p;
  out.report.params["lhs"] = r.lhs;
  out.report.params["crp"] = r.crp;
  out.report.params["exhaustive"] = r.exhaustive;
  out.report.params["patterns"] = r.patterns;
  out.report.seed = cfg.seed;
  out.report.estimate = r.lhs / (std::sqrt(p) * r.crp);
  // Left inequality CR_p <= lhs is the certified side.
  if (r.crp > r.lhs * (1.0 + 1e-10)) out.status = 2;
  return out;
}

CommandResult run_sidon_fund(const RunConfig& cfg) {
  require_keys(cfg.params, {"q", "trials", "trunc", "theta-grid", "tol"});
  const double q = get_required<double>(cfg.params, "q");
  const int trials = get_or<int>(cfg.params, "trials", 100);
  const int trunc = get_or<int>(cfg.params, "trunc", 64);
  const int grid = get_or<int>(cfg.params, "theta-grid", 256);
  const double tol = get_or<double>(cfg.params, "tol", 0.05);

  std::vector<double> ratios(static_cast<std::size_t>(trials), 0.0);
  parallel_for(trials, [&](std::int64_t t) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(t));
    const CMat a = rng.gaussian_cmat(2, 2);
    Eigen::HouseholderQR<CMat> qr(rng.gaussian_cmat(2, 2));
    const CMat v = qr.householderQ();
    ratios[static_cast<std::size_t>(t)] = sidon_singleton_check(q, a, v, trunc, grid);
  });
  double best = 0.0;
  for (double r : ratios) best = std::max(best, r);

  CommandResult out;
  out.report.command = "sidon-fund";
  out.report.params["q"] = q;
  out.report.params["trials"] = trials;
  out.report.params["trunc"] = trunc;
  out.report.params["theta-grid"] = grid;
  out.report.params["tol"] = tol;
  out.report.seed = cfg.seed;
  out.report.estimate = best;
  out.report.certified = (1.0 + 1.0 / q) * (1.0 + tol);
  out.report.per_trial = std::move(ratios);
  if (out.report.violated()) out.status = 2;
  return out;
}

CommandResult run_screen_q(const RunConfig& cfg) {
  require_keys(cfg.params, {"q", "labels", "gapset-count", "n0", "threshold"});
  const IrrepSet set = set_from_params(cfg.params);
  const QScreenResult r = check_q_boundedness(
      set, get_or<double>(cfg.params, "threshold", std::numeric_limits<double>::infinity()));
  CommandResult out;
  out.report.command = "screen-q";
  out.report.params = cfg.params;
  out.report.params["verdict"] =
      r.within_threshold ? "bounded within threshold"
                         : "necessary condition violated beyond threshold";
  out.report.params["max_q_inv_norm"] = r.max_q_inv_norm;
  out.report.seed = cfg.seed;
  out.report.estimate = r.max_q_norm;
  return out;
}

CommandResult run_contrast(const RunConfig& cfg) {
  require_keys(cfg.params, {"q", "n-max"});
  const double q = get_required<double>(cfg.params, "q");
  const int n_max = get_or<int>(cfg.params, "n-max", 40);
  const auto rows = classical_contrast(n_max, q);
  CommandResult out;
  out.report.command = "contrast";
  out.report.params["q"] = q;
  out.report.params["n-max"] = n_max;
  out.report.seed = cfg.seed;
  out.report.estimate = rows.empty() ? 0.0 : rows.back().second;
  Table t;
  t.header = {"n", "central_l4_pow4"};
  for (const auto& [n, v] : rows)
    t.rows.push_back({std::to_string(n), format_sig(v)});
  out.table = std::move(t);
  return out;
}

CommandResult run_probe(const RunConfig& cfg) {
  require_keys(cfg.params, {"q", "labels", "gapset-count", "n0", "symbol", "p", "trials"});
  const IrrepSet set = set_from_params(cfg.params);
  const int p = get_or<int>(cfg.params, "p", 2);
  const int trials = get_or<int>(cfg.params, "trials", 10000);
  nlohmann::json symbol_json;
  if (cfg.params.contains("symbol") && cfg.params.at("symbol").is_string())
    symbol_json = nlohmann::json::parse(cfg.params.at("symbol").get<std::string>());
  else
    symbol_json = get_required<ordered_json>(cfg.params, "symbol");
  const std::map<int, Complex> symbol = scalar_map_from_json(symbol_json);

  double max_abs = 0.0;
  for (const auto& [n, c] : symbol) max_abs = std::max(max_abs, std::abs(c));

  CommandResult out;
  out.report.command = "probe";
  out.report.params["q"] = set.model.q(0);
  out.report.params["p"] = p;
  out.report.params["trials"] = trials;
  out.report.seed = cfg.seed;
  out.report.estimate = central_multiplier_probe(set, symbol, p, trials, cfg.seed);
  if (p == 2) {
    out.report.certified = max_abs * (1.0 + 1e-12);
  } else if (set.model.q(0) < 1.0 && is_gap_set(set, get_or<int>(cfg.params, "n0", 0))) {
    out.report.certified = kq_constant(set.model.q(0)) * max_abs;
  }
  if (out.report.violated()) out.status = 2;
  return out;
}

}  // namespace

int run(const RunConfig& cfg, std::string* output) {
  CommandResult result;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cfg.format != "json" && cfg.format != "csv")
      throw InputError("format must be json or csv");
    if (cfg.command == "gapset")
      result = run_gapset(cfg);
    else if (cfg.command == "norms")
      result = run_norms(cfg);
    else if (cfg.command == "extract")
      result = run_extract(cfg);
    else if (cfg.command == "khintchine")
      result = run_khintchine(cfg);
    else if (cfg.command == "sidon-fund")
      result = run_sidon_fund(cfg);
    else if (cfg.command == "screen-q")
      result = run_screen_q(cfg);
    else if (cfg.command == "contrast")
      result = run_contrast(cfg);
    else if (cfg.command == "probe")
      result = run_probe(cfg);
    else
      throw InputError("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  result.report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();

  std::string rendered;
  if (result.table && cfg.format == "csv") {
    rendered = table_to_csv(*result.table);
  } else if (result.table) {
    ordered_json j = report_to_json(result.report, cfg.timing);
    j["table"] = table_to_json(*result.table);
    rendered = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    rendered = report_to_csv(result.report, cfg.timing, cfg.per_trial);
  } else {
    rendered = report_to_json(result.report, cfg.timing).dump(2) + "\n";
  }

  if (output) *output = rendered;
  if (cfg.out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
      return 1;
    }
    out << rendered;
    if (!out.good()) {
      std::cerr << "error: short write to '" << cfg.out_path << "'\n";
      return 1;
    }
  }
  return result.status;
}

}  // namespace lacuna::cli
