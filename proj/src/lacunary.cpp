#include "lacuna/lacunary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lacuna/gns.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/rng.hpp"
#include "lacuna/schatten.hpp"

namespace lacuna {

IrrepSet::IrrepSet(QuantumGroupModel m, std::vector<IrrepLabel> ls)
    : model(std::move(m)), labels(std::move(ls)) {
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i + 1 < labels.size(); ++i)
    if (labels[i] == labels[i + 1])
      throw std::invalid_argument("IrrepSet: duplicate label " + labels[i].str());
  for (const auto& l : labels)
    if (!l.valid_for(model)) throw std::invalid_argument("IrrepSet: invalid label " + l.str());
}

std::vector<int> IrrepSet::levels() const {
  if (!single_factor()) throw std::logic_error("IrrepSet::levels: single-factor sets only");
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(l.level(0));
  return out;
}

IrrepSet gap_set(const QuantumGroupModel& model, int count, int n0) {
  if (count < 1) throw std::invalid_argument("gap_set: count must be >= 1");
  if (n0 < 0) throw std::invalid_argument("gap_set: n0 must be >= 0");
  std::vector<IrrepLabel> labels;
  int n = n0;
  for (int k = 0; k < count; ++k) {
    labels.push_back(IrrepLabel::single(n));
    n += k + 1;
  }
  return IrrepSet(model, std::move(labels));
}

bool is_gap_set(const IrrepSet& set, int n0) {
  if (!set.single_factor() || set.labels.empty()) return false;
  const std::vector<int> ns = set.levels();
  int expect = n0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (ns[k] != expect) return false;
    expect += static_cast<int>(k) + 1;
  }
  return true;
}

KqParts kq_constant_parts(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("kq_constant: q must lie in (0, 1)");
  // K minimal with x + 1 <= K q^(-x/2) for x >= 1: maximize (x + 1) q^(x/2).
  const double x_star = -2.0 / std::log(q) - 1.0;
  double k = 2.0 * std::sqrt(q);  // value at the clamped endpoint x = 1
  if (x_star > 1.0) k = std::max(k, (x_star + 1.0) * std::pow(q, x_star / 2.0));
  k = std::max(1.0, k);
  const double k_prime =
      std::pow(q, 0.25) / ((1.0 - std::pow(q, 0.25)) * (1.0 - std::pow(q, 0.125)));
  const double kq =
      std::pow(2.0 * k * (4.0 * k_prime * k_prime + 1.0) / (1.0 - std::sqrt(q)), 0.25);
  return {k, k_prime, kq};
}

double kq_constant(double q) { return kq_constant_parts(q).kq; }

namespace {

// Quartic form Phi(c) = sum_m w_m (c^* A^m c)^2 on coefficients over the
// level list ns, where A^m is the 0/1 fusion-membership matrix and
// w_m = character_l4_pairing(m). Phi(c)^(1/4) is the L4 norm of the central
// polynomial with unit L2 norm when ||c|| = 1.
struct QuarticForm {
  std::vector<int> ns;
  std::vector<double> weights;  // w_m for m = 0 .. 2*max(ns)
  int m_count = 0;

  QuarticForm(const QuantumGroupModel& model, std::vector<int> levels)
      : ns(std::move(levels)) {
    const int top = *std::max_element(ns.begin(), ns.end());
    m_count = 2 * top + 1;
    weights.resize(static_cast<std::size_t>(m_count));
    for (int m = 0; m < m_count; ++m) weights[m] = character_l4_pairing(model, m);
  }

  // t_m = c^* A^m c accumulated over all (i, j) pairs with m in fuse(i, j).
  void fusion_coeffs(const CVec& c, std::vector<double>& t) const {
    t.assign(static_cast<std::size_t>(m_count), 0.0);
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = 0; j < ns.size(); ++j) {
        const double re = (std::conj(c[i]) * c[j]).real();
        for (int m = std::abs(ns[i] - ns[j]); m <= ns[i] + ns[j]; m += 2) t[m] += re;
      }
  }

  double value(const CVec& c, std::vector<double>& t) const {
    fusion_coeffs(c, t);
    KahanSum acc;
    for (int m = 0; m < m_count; ++m) acc.add(weights[m] * t[m] * t[m]);
    return acc.value();
  }

  // Wirtinger gradient 2 sum_m w_m t_m A^m c (conjugate-coordinate).
  CVec gradient(const CVec& c, const std::vector<double>& t) const {
    CVec g = CVec::Zero(c.size());
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = 0; j < ns.size(); ++j) {
        double w = 0.0;
        for (int m = std::abs(ns[i] - ns[j]); m <= ns[i] + ns[j]; m += 2)
          w += weights[m] * t[m];
        g[i] += 2.0 * w * c[j];
      }
    return g;
  }

  double ascend(CVec c, std::vector<double>& t, int max_iters = 400) const {
    c.normalize();
    double val = value(c, t);
    double step = 0.5;
    for (int it = 0; it < max_iters; ++it) {
      const CVec g = gradient(c, t);
      CVec next = c + step * g;
      next.normalize();
      const double nval = value(next, t);
      if (nval > val) {
        if (nval - val < 1e-14 * std::max(1.0, val)) {
          c = next;
          val = nval;
          break;
        }
        c = next;
        val = nval;
        step *= 1.2;
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    return val;
  }
};

}  // namespace

LacunaReport central_lambda4_ratio(const IrrepSet& set, int first_n, int trials,
                                   int multistarts, std::uint64_t seed,
                                   const std::vector<CVec>& extra_starts) {
  if (!set.single_factor())
    throw std::invalid_argument("central_lambda4_ratio: single-factor sets only");
  if (set.labels.empty()) throw std::invalid_argument("central_lambda4_ratio: empty set");
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<int> ns = set.levels();
  if (first_n < 1 || first_n > static_cast<int>(ns.size()))
    first_n = static_cast<int>(ns.size());
  ns.resize(static_cast<std::size_t>(first_n));
  const QuarticForm form(set.model, ns);
  const int m = first_n;

  // Random sampling battery.
  std::vector<double> sampled(static_cast<std::size_t>(std::max(0, trials)), 0.0);
  parallel_for(trials, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> scratch;
    sampled[static_cast<std::size_t>(t)] = form.value(rng.unit_cvec(m), scratch);
  });
  double best = 0.0;
  int best_trial = -1;
  for (std::size_t i = 0; i < sampled.size(); ++i)
    if (sampled[i] > best) {
      best = sampled[i];
      best_trial = static_cast<int>(i);
    }

  // Multistart ascent: random starts, the sampling argmax, basis vectors,
  // and any caller-provided warm starts.
  std::vector<CVec> starts;
  for (int s = 0; s < multistarts; ++s) {
    RngStream rng(seed ^ 0x9E3779B97F4A7C15ULL, static_cast<std::uint64_t>(s));
    starts.push_back(rng.unit_cvec(m));
  }
  if (best_trial >= 0) {
    RngStream rng(seed, static_cast<std::uint64_t>(best_trial));
    starts.push_back(rng.unit_cvec(m));
  }
  for (int i = 0; i < m; ++i) {
    CVec e = CVec::Zero(m);
    e[i] = 1.0;
    starts.push_back(std::move(e));
  }
  for (const auto& s : extra_starts) {
    if (s.size() == 0) continue;
    CVec padded = CVec::Zero(m);
    for (int i = 0; i < std::min<int>(m, static_cast<int>(s.size())); ++i) padded[i] = s[i];
    if (padded.norm() > 0) starts.push_back(std::move(padded));
  }
  std::vector<double> ascended(starts.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(starts.size()), [&](std::int64_t i) {
    std::vector<double> scratch;
    ascended[static_cast<std::size_t>(i)] = form.ascend(starts[static_cast<std::size_t>(i)], scratch);
  });
  for (double v : ascended) best = std::max(best, v);

  LacunaReport rep;
  rep.command = "central-lambda4-ratio";
  rep.params["q"] = set.model.q(0);
  rep.params["first_n"] = first_n;
  rep.params["trials"] = trials;
  rep.params["multistarts"] = multistarts;
  rep.seed = seed;
  rep.estimate = std::pow(best, 0.25);
  if (is_gap_set(set) && set.model.q(0) < 1.0) rep.certified = kq_constant(set.model.q(0));
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  for (double v : sampled) rep.per_trial.push_back(std::pow(v, 0.25));
  return rep;
}

QScreenResult check_q_boundedness(const IrrepSet& set, double threshold) {
  double max_q = 1.0;
  for (const auto& label : set.labels) {
    double norm = 1.0;
    for (const auto& [comp, n] : label.indices())
      norm *= std::pow(set.model.q(comp), -n);
    max_q = std::max(max_q, norm);
  }
  // ||Q_pi|| = ||Q_pi^-1||: the exponent range is symmetric per factor.
  return {max_q, max_q, max_q <= threshold, threshold};
}

double sidon_singleton_check(double q, const CMat& A, const CMat& V, int trunc,
                             int theta_grid) {
  if (A.rows() != 2 || A.cols() != 2 || V.rows() != 2 || V.cols() != 2)
    throw std::invalid_argument("sidon_singleton_check: A and V must be 2x2");
  if ((V.adjoint() * V - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("sidon_singleton_check: V is not unitary");
  if (A.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("sidon_singleton_check: A = 0 has no reference norm");
  const double rhs = fundamental_combo_norm(A, q, trunc, theta_grid);
  const double lhs = fundamental_combo_norm(V * A, q, trunc, theta_grid);
  return lhs / rhs;
}

double central_multiplier_probe(const IrrepSet& set, const std::map<int, Complex>& symbol,
                                int p, int trials, std::uint64_t seed) {
  if (p != 2 && p != 4) throw std::invalid_argument("central_multiplier_probe: p in {2, 4}");
  if (!set.single_factor())
    throw std::invalid_argument("central_multiplier_probe: single-factor sets only");
  const std::vector<int> ns = set.levels();
  const int m = static_cast<int>(ns.size());

  auto ratio_for = [&](const CVec& c) {
    CentralPoly f(set.model);
    CentralPoly mf(set.model);
    for (int i = 0; i < m; ++i) {
      f.set(ns[i], c[i]);
      auto it = symbol.find(ns[i]);
      const Complex scale = it == symbol.end() ? Complex(0.0, 0.0) : it->second;
      mf.set(ns[i], scale * c[i]);
    }
    const double denom = p == 2 ? central_l2(f) : central_l4(f);
    const double numer = p == 2 ? central_l2(mf) : central_l4(mf);
    return denom > 0.0 ? numer / denom : 0.0;
  };

  std::vector<double> vals(static_cast<std::size_t>(m + std::max(0, trials)), 0.0);
  parallel_for(static_cast<std::int64_t>(vals.size()), [&](std::int64_t t) {
    CVec c;
    if (t < m) {
      c = CVec::Zero(m);
      c[static_cast<int>(t)] = 1.0;
    } else {
      RngStream rng(seed, static_cast<std::uint64_t>(t - m));
      c = rng.unit_cvec(m);
    }
    vals[static_cast<std::size_t>(t)] = ratio_for(c);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

RefineResult refine_by_irreps(const IrrepSet& set, const std::vector<int>& dims,
                              const Extractor& extractor, int p) {
  if (dims.size() != set.labels.size())
    throw std::invalid_argument("refine_by_irreps: dims size mismatch");
  if (p < 2) throw std::invalid_argument("refine_by_irreps: p must be >= 2");
  RefineResult out;

  int d0 = 0;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("refine_by_irreps: dims must be >= 1");
    d0 = std::max(d0, d);
  }
  const int max_rounds = d0 * d0;

  // Residual coefficient cells per label.
  std::map<IrrepLabel, std::vector<std::pair<int, int>>> residual;
  std::vector<IrrepLabel> survivors = set.labels;
  for (std::size_t i = 0; i < set.labels.size(); ++i) {
    auto& cells = residual[set.labels[i]];
    for (int r = 0; r < dims[i]; ++r)
      for (int c = 0; c < dims[i]; ++c) cells.emplace_back(r, c);
  }

  while (true) {
    // Exhaustion check over the current survivors.
    bool exhausted = true;
    for (const auto& label : survivors)
      if (!residual[label].empty()) exhausted = false;
    if (exhausted) {
      out.final_labels = survivors;
      out.ok = true;
      out.diagnostic = "exhausted after " + std::to_string(out.rounds) + " round(s)";
      return out;
    }
    if (out.rounds >= max_rounds) {
      out.diagnostic = "round budget (max dim)^2 exceeded";
      return out;
    }

    std::vector<RefineCell> pool;
    for (const auto& label : survivors)
      for (const auto& [r, c] : residual[label]) pool.push_back({label, r, c});

    auto [picked, constant] = extractor(pool);
    ++out.rounds;
    if (picked.empty()) {
      out.final_labels.clear();
      out.diagnostic = "extractor returned an empty subfamily at round " +
                       std::to_string(out.rounds);
      return out;
    }
    out.round_constants.push_back(constant);

    std::set<IrrepLabel> next_survivors;
    for (int idx : picked) {
      if (idx < 0 || idx >= static_cast<int>(pool.size()))
        throw std::out_of_range("refine_by_irreps: extractor index out of range");
      const RefineCell& cell = pool[static_cast<std::size_t>(idx)];
      next_survivors.insert(cell.label);
      auto& cells = residual[cell.label];
      const auto it = std::find(cells.begin(), cells.end(), std::make_pair(cell.row, cell.col));
      if (it != cells.end()) cells.erase(it);
    }
    survivors.assign(next_survivors.begin(), next_survivors.end());
  }
}

std::vector<std::pair<int, double>> classical_contrast(int n_max, double q) {
  if (n_max < 0) throw std::invalid_argument("classical_contrast: n_max must be >= 0");
  const QuantumGroupModel model = QuantumGroupModel::single(q);
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    CentralPoly f(model);
    f.set(n, 1.0);
    out.emplace_back(n, central_l4_pow4(f));
  }
  return out;
}

}  // namespace lacuna
