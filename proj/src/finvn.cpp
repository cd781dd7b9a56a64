#include "lacuna/finvn.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "lacuna/parallel.hpp"
#include "lacuna/rng.hpp"
#include "lacuna/schatten.hpp"

namespace lacuna {

namespace {

constexpr double kPiSqOver6 = 1.64493406684822643647241516664602519;

// Frobenius pairing Tr(w^* x), evaluated entrywise.
Complex frob(const CMat& w, const CMat& x) {
  return (w.conjugate().cwiseProduct(x)).sum();
}

}  // namespace

StateAlgebra::StateAlgebra(CMat rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw std::invalid_argument("StateAlgebra: rho must be square and non-empty");
  const double herm_defect = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-10)
    throw std::invalid_argument("StateAlgebra: rho is not Hermitian");
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw std::invalid_argument("StateAlgebra: rho must have unit trace");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("StateAlgebra: eigendecomposition failed");
  eigs_ = es.eigenvalues();
  basis_ = es.eigenvectors();
  if (eigs_.minCoeff() <= 0.0)
    throw std::invalid_argument("StateAlgebra: rho must be positive definite");
  cond_ = eigs_.maxCoeff() / eigs_.minCoeff();
}

StateAlgebra StateAlgebra::from_eigenvalues(const RVec& eigs) {
  if (eigs.size() == 0) throw std::invalid_argument("StateAlgebra: empty spectrum");
  RVec normalized = eigs / eigs.sum();
  return StateAlgebra(CMat(normalized.cast<Complex>().asDiagonal()));
}

CMat StateAlgebra::power(double s) const {
  CMat out = basis_ * eigs_.array().pow(s).matrix().cast<Complex>().asDiagonal() *
             basis_.adjoint();
  return 0.5 * (out + out.adjoint()).eval();
}

CMat StateAlgebra::cpower(Complex w) const {
  CVec d(eigs_.size());
  for (Eigen::Index i = 0; i < eigs_.size(); ++i) d[i] = std::exp(w * std::log(eigs_[i]));
  return basis_ * d.asDiagonal() * basis_.adjoint();
}

Complex StateAlgebra::phi(const CMat& x) const { return (rho_ * x).trace(); }

Complex StateAlgebra::inner(const CMat& x, const CMat& y) const {
  return (rho_ * x.adjoint() * y).trace();
}

StateAlgebra algebra_from_json(const nlohmann::json& j) {
  const int n = j.at("N").get<int>();
  if (j.contains("rho_eigs")) {
    const auto eigs = j.at("rho_eigs").get<std::vector<double>>();
    if (static_cast<int>(eigs.size()) != n)
      throw std::invalid_argument("algebra_from_json: rho_eigs size != N");
    if (j.contains("basis") && j.at("basis").get<std::string>() != "identity")
      throw std::invalid_argument("algebra_from_json: unknown basis");
    RVec v(n);
    for (int i = 0; i < n; ++i) v[i] = eigs[static_cast<std::size_t>(i)];
    return StateAlgebra::from_eigenvalues(v);
  }
  const auto& rj = j.at("rho");
  const auto re = rj.at("re").get<std::vector<std::vector<double>>>();
  const auto im = rj.at("im").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(re.size()) != n || im.size() != re.size())
    throw std::invalid_argument("algebra_from_json: rho shape != N x N");
  CMat rho(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(re[r].size()) != n || im[r].size() != re[r].size())
      throw std::invalid_argument("algebra_from_json: ragged rho");
    for (int c = 0; c < n; ++c) rho(r, c) = Complex(re[r][c], im[r][c]);
  }
  return StateAlgebra(rho);
}

double haagerup_lp_norm(const StateAlgebra& a, const CMat& x, double p, double theta) {
  if (p < 1.0) throw std::invalid_argument("haagerup_lp_norm: p must be >= 1");
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("haagerup_lp_norm: theta must lie in [0, 1]");
  if (x.rows() != a.dim() || x.cols() != a.dim())
    throw std::invalid_argument("haagerup_lp_norm: shape mismatch");
  if (theta == 0.0) return schatten_norm(x * a.power(1.0 / p), p);
  return schatten_norm(a.power(theta / p) * x * a.power((1.0 - theta) / p), p);
}

CMat modular_sigma(const StateAlgebra& a, Complex z, const CMat& x) {
  if (x.rows() != a.dim() || x.cols() != a.dim())
    throw std::invalid_argument("modular_sigma: shape mismatch");
  const Complex iz = Complex(0.0, 1.0) * z;
  return a.cpower(iz) * x * a.cpower(-iz);
}

double OrthoSystem::k_bound(int n) const {
  double k = 1.0;
  for (const auto& x : elements) k = std::max(k, haagerup_lp_norm(algebra, x, 2.0 * n, 0.0));
  return k;
}

OrthoSystem gram_schmidt_phi(const StateAlgebra& a, const std::vector<CMat>& xs,
                             bool normalize) {
  OrthoSystem out{a, {}, normalize, {}, 0.0};
  std::vector<CMat> cached_wr;  // y_l * rho, for O(N^2) phi-inner products
  std::vector<double> norms2;   // phi(y_l^* y_l)

  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].rows() != a.dim() || xs[i].cols() != a.dim())
      throw std::invalid_argument("gram_schmidt_phi: shape mismatch");
    CMat y = xs[i];
    const double in_norm = std::sqrt(std::max(0.0, a.inner(xs[i], xs[i]).real()));
    // Two projection passes keep the residual orthogonal at machine level.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t l = 0; l < out.elements.size(); ++l) {
        const Complex coef = frob(cached_wr[l], y) / norms2[l];
        y -= coef * out.elements[l];
      }
    }
    const double nrm = std::sqrt(std::max(0.0, a.inner(y, y).real()));
    if (nrm < 1e-10 * std::max(1.0, in_norm)) {
      out.dropped.push_back(static_cast<int>(i));
      continue;
    }
    if (normalize) y /= nrm;
    cached_wr.push_back(y * a.rho());
    norms2.push_back(normalize ? 1.0 : nrm * nrm);
    out.elements.push_back(std::move(y));
  }
  if (out.elements.empty()) throw std::invalid_argument("gram_schmidt_phi: all inputs are phi-null");

  for (std::size_t i = 0; i < out.elements.size(); ++i)
    for (std::size_t j = i + 1; j < out.elements.size(); ++j)
      out.max_cross = std::max(out.max_cross, std::abs(frob(cached_wr[i], out.elements[j])));
  return out;
}

namespace {

CMat twisted_chain(const StateAlgebra& a, const std::vector<std::pair<CMat, CMat>>& pairs) {
  const int n = static_cast<int>(pairs.size()) + 1;
  CMat prod = CMat::Identity(a.dim(), a.dim());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const double s = static_cast<double>(n - 1 - static_cast<int>(j)) / n;
    // sigma_{i s}(w) = rho^{-s} w rho^{s}
    prod *= a.power(-s) * (pairs[j].first.adjoint() * pairs[j].second) * a.power(s);
  }
  return prod;
}

}  // namespace

Complex twisted_correlation(const StateAlgebra& a,
                            const std::vector<std::pair<CMat, CMat>>& pairs,
                            const CMat& tail_left, const CMat& tail_right) {
  const CMat chain = twisted_chain(a, pairs);
  return a.phi(chain * tail_left.adjoint() * tail_right);
}

Complex twisted_correlation_adjoint(const StateAlgebra& a,
                                    const std::vector<std::pair<CMat, CMat>>& pairs,
                                    const CMat& tail_left, const CMat& tail_right) {
  const CMat chain = twisted_chain(a, pairs);
  const CMat sig_i = a.power(-1.0) * tail_left * a.power(1.0);  // sigma_i(tail_left)
  return a.phi(sig_i * chain * tail_right.adjoint());
}

double lambda_certified_log_constant(double k_bound, int n) {
  if (n < 2) throw std::invalid_argument("lambda_certified_log_constant: n must be >= 2");
  const double k = std::max(1.0, k_bound);
  const double growth = std::pow(k, n) * std::pow(4.0, n) * n;
  const double head = 2.0 * std::pow(k, 2 * n) + growth + n * kPiSqOver6;
  return (std::log(head) + growth) / (2.0 * n);
}

double lambda_certified_constant(double k_bound, int n) {
  return std::exp(lambda_certified_log_constant(k_bound, n));
}

namespace {

// Enumerates tuples (k0, k1, l1, ..., k_{n-1}, l_{n-1}) over [0, k)^(2n-1).
bool next_tuple(std::vector<int>& t, int k) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (++t[i] < k) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace

GreedySelection greedy_lambda_select(const OrthoSystem& pool, int n, int target_count) {
  if (n < 2) throw std::invalid_argument("greedy_lambda_select: n must be >= 2");
  if (target_count < 1) throw std::invalid_argument("greedy_lambda_select: target_count >= 1");
  if (pool.elements.empty()) throw std::invalid_argument("greedy_lambda_select: empty pool");

  const StateAlgebra& a = pool.algebra;
  const auto& xs = pool.elements;
  const int pool_size = static_cast<int>(xs.size());

  GreedySelection sel;
  sel.order = n;
  sel.k_bound = pool.k_bound(n);
  sel.log_constant = lambda_certified_log_constant(sel.k_bound, n);
  sel.constant = std::exp(sel.log_constant);

  std::vector<char> taken(xs.size(), 0);
  sel.indices.push_back(0);
  taken[0] = 1;

  const CMat rho = a.rho();
  while (static_cast<int>(sel.indices.size()) < target_count) {
    const int k = static_cast<int>(sel.indices.size());
    const double threshold =
        1.0 / (2.0 * std::pow(static_cast<double>(k), 2 * n - 1) * (k + 1));

    // Precompute, for every tuple over the current selection, the left
    // factors of both correlation variants; candidates then cost O(N^2)
    // per tuple.
    std::vector<CMat> left_plain;   // rho * chain * x_{k0}^*       (pairs with Tr(. x_c))
    std::vector<CMat> left_adj;     // rho * sigma_i(x_{k0}) * chain (pairs with Tr(. x_c^*))
    std::vector<int> tuple(static_cast<std::size_t>(2 * n - 1), 0);
    do {
      std::vector<std::pair<CMat, CMat>> pairs;
      pairs.reserve(n - 1);
      for (int j = 0; j < n - 1; ++j)
        pairs.emplace_back(xs[sel.indices[tuple[1 + 2 * j]]],
                           xs[sel.indices[tuple[2 + 2 * j]]]);
      const CMat chain = twisted_chain(a, pairs);
      const CMat& x0 = xs[sel.indices[tuple[0]]];
      left_plain.push_back(rho * chain * x0.adjoint());
      left_adj.push_back(rho * (a.power(-1.0) * x0 * a.power(1.0)) * chain);
    } while (next_tuple(tuple, k));

    int found = -1;
    for (int c = 0; c < pool_size && found < 0; ++c) {
      if (taken[c]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < left_plain.size() && ok; ++t) {
        if (std::abs((left_plain[t] * xs[c]).trace()) > threshold) ok = false;
        else if (std::abs((left_adj[t] * xs[c].adjoint()).trace()) > threshold) ok = false;
      }
      if (ok) found = c;
    }
    if (found < 0) {
      sel.complete = false;
      return sel;
    }
    sel.indices.push_back(found);
    taken[found] = 1;
  }
  sel.complete = true;
  return sel;
}

double greedy_threshold_audit(const OrthoSystem& pool, const GreedySelection& sel) {
  const StateAlgebra& a = pool.algebra;
  const auto& xs = pool.elements;
  const int n = sel.order;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t step = 1; step < sel.indices.size(); ++step) {
    const int k = static_cast<int>(step);
    const double threshold =
        1.0 / (2.0 * std::pow(static_cast<double>(k), 2 * n - 1) * (k + 1));
    const CMat& cand = xs[sel.indices[step]];
    std::vector<int> tuple(static_cast<std::size_t>(2 * n - 1), 0);
    do {
      std::vector<std::pair<CMat, CMat>> pairs;
      pairs.reserve(n - 1);
      for (int j = 0; j < n - 1; ++j)
        pairs.emplace_back(xs[sel.indices[tuple[1 + 2 * j]]],
                           xs[sel.indices[tuple[2 + 2 * j]]]);
      const CMat& x0 = xs[sel.indices[tuple[0]]];
      const double c1 = std::abs(twisted_correlation(a, pairs, x0, cand));
      const double c2 = std::abs(twisted_correlation_adjoint(a, pairs, x0, cand));
      worst = std::min(worst, threshold - std::max(c1, c2));
    } while (next_tuple(tuple, k));
  }
  return worst;
}

double lambda_ratio_check(const StateAlgebra& a, const std::vector<CMat>& elements, double p,
                          int trials, std::uint64_t seed) {
  if (elements.empty()) throw std::invalid_argument("lambda_ratio_check: empty selection");
  const int m = static_cast<int>(elements.size());
  const CMat rp = a.power(1.0 / p);

  const std::int64_t total = static_cast<std::int64_t>(m) + trials;
  std::vector<double> ratios(static_cast<std::size_t>(total), 0.0);
  parallel_for(total, [&](std::int64_t t) {
    CVec c;
    if (t < m) {
      c = CVec::Zero(m);
      c[static_cast<int>(t)] = 1.0;  // standard basis vectors first
    } else {
      RngStream rng(seed, static_cast<std::uint64_t>(t - m));
      c = rng.unit_cvec(m);
    }
    CMat s = CMat::Zero(a.dim(), a.dim());
    for (int i = 0; i < m; ++i) s += c[i] * elements[i];
    ratios[static_cast<std::size_t>(t)] = schatten_norm(s * rp, p);
  });
  double best = 0.0;
  for (double r : ratios) best = std::max(best, r);
  return best;
}

KhintchineResult khintchine_sample(const StateAlgebra& a, const std::vector<CMat>& elements,
                                   double p, int exhaustive_up_to, int trials,
                                   std::uint64_t seed) {
  if (p < 2.0) throw std::invalid_argument("khintchine_sample: p must be >= 2");
  if (elements.empty()) throw std::invalid_argument("khintchine_sample: empty family");
  const int m = static_cast<int>(elements.size());
  const CMat rp = a.power(1.0 / p);

  std::vector<CMat> tilted;  // x_k rho^(1/p)
  tilted.reserve(elements.size());
  for (const auto& x : elements) tilted.push_back(x * rp);

  // CR_p: column and row square functions of the tilted family.
  CMat col = CMat::Zero(a.dim(), a.dim());
  CMat row = CMat::Zero(a.dim(), a.dim());
  for (const auto& x : tilted) {
    col += x.adjoint() * x;
    row += x * x.adjoint();
  }
  auto psd_sqrt_schatten = [p](const CMat& s) {
    Eigen::SelfAdjointEigenSolver<CMat> es(s);
    KahanSum acc;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      acc.add(std::pow(std::max(0.0, es.eigenvalues()[i]), p / 2.0));
    return std::pow(acc.value(), 1.0 / p);
  };
  const double crp = std::max(psd_sqrt_schatten(col), psd_sqrt_schatten(row));

  KhintchineResult out{};
  out.crp = crp;
  out.exhaustive = m <= exhaustive_up_to;
  const std::int64_t patterns = out.exhaustive ? (std::int64_t{1} << m) : trials;
  out.patterns = patterns;

  std::vector<double> vals(static_cast<std::size_t>(patterns), 0.0);
  parallel_for(patterns, [&](std::int64_t t) {
    CMat s = CMat::Zero(a.dim(), a.dim());
    if (out.exhaustive) {
      for (int k = 0; k < m; ++k)
        s += ((t >> k) & 1) ? tilted[static_cast<std::size_t>(k)]
                            : -tilted[static_cast<std::size_t>(k)];
    } else {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      for (int k = 0; k < m; ++k)
        s += static_cast<double>(rng.sign()) * tilted[static_cast<std::size_t>(k)];
    }
    vals[static_cast<std::size_t>(t)] = schatten_norm(s, p);
  });
  KahanSum acc;
  for (double v : vals) acc.add(std::pow(v, p));
  out.lhs = std::pow(acc.value() / static_cast<double>(patterns), 1.0 / p);
  out.ratio = crp > 0.0 ? out.lhs / crp : (out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  return out;
}

std::vector<CMat> family_matrix_units(int N) {
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      CMat e = CMat::Zero(N, N);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
  return out;
}

std::vector<CMat> family_fourier_unitaries(int N) {
  const Complex omega = std::polar(1.0, 6.28318530717958647692528676655900577 / N);
  CMat clock = CMat::Zero(N, N);
  CMat shift = CMat::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    clock(k, k) = std::pow(omega, k);
    shift((k + 1) % N, k) = 1.0;
  }
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(N) * N);
  CMat ua = CMat::Identity(N, N);
  for (int x = 0; x < N; ++x) {
    CMat uab = ua;
    for (int y = 0; y < N; ++y) {
      out.push_back(uab);
      uab = uab * shift;
    }
    ua = ua * clock;
  }
  return out;
}

std::vector<CMat> family_random_gaussian(int N, int count, std::uint64_t seed) {
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(rng.gaussian_cmat(N, N) / std::sqrt(static_cast<double>(N)));
  }
  return out;
}

StateAlgebra random_state(int N, std::uint64_t seed) {
  RngStream rng(seed, 0xA15EB57A);
  RVec eigs(N);
  for (int i = 0; i < N; ++i) eigs[i] = rng.uniform(1.0, 2.0);
  eigs /= eigs.sum();
  const CMat g = rng.gaussian_cmat(N, N);
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat u = qr.householderQ();
  CMat rho = u * eigs.cast<Complex>().asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return StateAlgebra(rho);
}

}  // namespace lacuna
