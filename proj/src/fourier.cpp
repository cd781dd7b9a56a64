#include "lacuna/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "lacuna/rng.hpp"
#include "lacuna/schatten.hpp"

namespace lacuna {

namespace {

void check_shape(const QuantumGroupModel& model, const IrrepLabel& pi, const CMat& block,
                 const char* who) {
  if (!pi.valid_for(model))
    throw std::invalid_argument(std::string(who) + ": label references a missing component");
  const long d = classical_dim(pi);
  if (block.rows() != d || block.cols() != d)
    throw std::invalid_argument(std::string(who) + ": block shape does not match dim(pi) = " +
                                std::to_string(d) + " for irrep " + pi.str());
}

// Entrywise principal power lambda^w of a positive diagonal.
CVec diag_cpower(const RVec& diag, Complex w) {
  CVec out(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    out[i] = std::exp(w * std::log(diag[i]));
  return out;
}

}  // namespace

void FourierElement::set_block(const IrrepLabel& pi, CMat block) {
  check_shape(model_, pi, block, "FourierElement::set_block");
  blocks_[pi] = std::move(block);
}

const CMat* FourierElement::block(const IrrepLabel& pi) const {
  auto it = blocks_.find(pi);
  return it == blocks_.end() ? nullptr : &it->second;
}

CMat FourierElement::block_or_zero(const IrrepLabel& pi) const {
  if (const CMat* b = block(pi)) return *b;
  const long d = classical_dim(pi);
  return CMat::Zero(d, d);
}

FourierElement FourierElement::trimmed(double eps) const {
  FourierElement out(model_);
  for (const auto& [pi, b] : blocks_) {
    if (b.cwiseAbs().maxCoeff() > eps) out.set_block(pi, b);
  }
  return out;
}

bool approx_equal(const FourierElement& a, const FourierElement& b, double tol) {
  if (!(a.model() == b.model())) return false;
  for (const auto& [pi, blk] : a.blocks()) {
    if ((blk - b.block_or_zero(pi)).cwiseAbs().maxCoeff() > tol) return false;
  }
  for (const auto& [pi, blk] : b.blocks()) {
    if (!a.block(pi) && blk.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

void MultiplierSymbol::set_block(const IrrepLabel& pi, CMat block) {
  if (block.rows() != block.cols() || block.rows() != classical_dim(pi))
    throw std::invalid_argument("MultiplierSymbol::set_block: block shape mismatch for " +
                                pi.str());
  blocks_[pi] = std::move(block);
}

const CMat* MultiplierSymbol::block(const IrrepLabel& pi) const {
  auto it = blocks_.find(pi);
  return it == blocks_.end() ? nullptr : &it->second;
}

FourierElement from_coefficients(const QuantumGroupModel& model,
                                 const std::map<IrrepLabel, CMat>& X) {
  FourierElement out(model);
  for (const auto& [pi, coeff] : X) {
    check_shape(model, pi, coeff, "from_coefficients");
    const RVec q = q_matrix(model, pi);
    const double d = quantum_dim(model, pi);
    CMat block = coeff / d;
    for (Eigen::Index j = 0; j < block.cols(); ++j) block.col(j) /= q[j];
    out.set_block(pi, std::move(block));
  }
  return out;
}

Complex haar_pair(const QuantumGroupModel& model, const IrrepLabel& pi, int i, int j,
                  const IrrepLabel& pi2, int l, int m) {
  const long d = classical_dim(pi);
  const long d2 = classical_dim(pi2);
  if (i < 0 || j < 0 || i >= d || j >= d || l < 0 || m < 0 || l >= d2 || m >= d2)
    throw std::out_of_range("haar_pair: index out of range");
  if (pi != pi2 || i != l || m != j) return 0.0;
  const RVec q = q_matrix(model, pi);
  return q[j] / quantum_dim(model, pi);
}

Complex haar_pair_star(const QuantumGroupModel& model, const IrrepLabel& pi, int i, int j,
                       const IrrepLabel& pi2, int l, int m) {
  const long d = classical_dim(pi);
  const long d2 = classical_dim(pi2);
  if (i < 0 || j < 0 || i >= d || j >= d || l < 0 || m < 0 || l >= d2 || m >= d2)
    throw std::out_of_range("haar_pair_star: index out of range");
  if (pi != pi2 || j != m || l != i) return 0.0;
  const RVec q = q_matrix(model, pi);
  return (1.0 / q[i]) / quantum_dim(model, pi);
}

double l2_norm(const FourierElement& x) {
  KahanSum acc;
  for (const auto& [pi, b] : x.blocks()) {
    const RVec q = q_matrix(x.model(), pi);
    const double d = quantum_dim(x.model(), pi);
    // Tr(Q b* b) = sum_c q_c * ||column c of b||^2 for diagonal Q.
    double t = 0.0;
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r) t += q[c] * std::norm(b(r, c));
    acc.add(d * t);
  }
  return std::sqrt(acc.value());
}

double l1_dual_norm(const FourierElement& x) {
  KahanSum acc;
  for (const auto& [pi, b] : x.blocks()) {
    const RVec q = q_matrix(x.model(), pi);
    CMat weighted = b;
    for (Eigen::Index j = 0; j < weighted.cols(); ++j) weighted.col(j) *= q[j];
    acc.add(quantum_dim(x.model(), pi) * trace_norm(weighted));
  }
  return acc.value();
}

double sup_block_norm(const FourierElement& x) {
  double sup = 0.0;
  for (const auto& [pi, b] : x.blocks()) sup = std::max(sup, operator_norm(b));
  return sup;
}

FourierElement convolve(const FourierElement& phi, const FourierElement& psi) {
  if (!(phi.model() == psi.model()))
    throw std::invalid_argument("convolve: model mismatch");
  FourierElement out(phi.model());
  for (const auto& [pi, b] : phi.blocks()) {
    if (const CMat* b2 = psi.block(pi)) out.set_block(pi, (*b2) * b);
  }
  return out;
}

FourierElement apply_multiplier(Side side, const MultiplierSymbol& a, const FourierElement& x) {
  FourierElement out(x.model());
  for (const auto& [pi, b] : x.blocks()) {
    const CMat* sym = a.block(pi);
    if (!sym) {
      if (a.extend() == MultiplierSymbol::Extend::identity) out.set_block(pi, b);
      continue;  // zero extension annihilates the block
    }
    if (sym->rows() != b.rows())
      throw std::invalid_argument("apply_multiplier: symbol shape mismatch for " + pi.str());
    if (side == Side::right) {
      out.set_block(pi, (*sym) * b);
    } else {
      const RVec q = q_matrix(x.model(), pi);
      CMat m = b;
      for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= q[j];  // b Q
      m = m * (*sym);                                                // b Q a
      for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) /= q[j];  // b Q a Q^-1
      out.set_block(pi, std::move(m));
    }
  }
  return out;
}

FourierElement modular_transform(Complex z, const FourierElement& x) {
  FourierElement out(x.model());
  const Complex iz = Complex(0.0, 1.0) * z;
  for (const auto& [pi, b] : x.blocks()) {
    const CVec w = diag_cpower(q_matrix(x.model(), pi), iz);
    CMat m = b;
    for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) *= w[r];
    for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) *= w[c];
    out.set_block(pi, std::move(m));
  }
  return out;
}

double l2_multiplier_norm(const MultiplierSymbol& a) {
  double sup = a.extend() == MultiplierSymbol::Extend::identity ? 1.0 : 0.0;
  for (const auto& [pi, b] : a.blocks()) sup = std::max(sup, operator_norm(b));
  return sup;
}

double l2_multiplier_norm_sampled(const MultiplierSymbol& a, const QuantumGroupModel& model,
                                  const std::vector<IrrepLabel>& support, int trials,
                                  std::uint64_t seed, int refine_iters) {
  // Weighted L2 geometry on the finite support: ||x||^2 = sum d_pi Tr(Q xhat* xhat).
  // The right multiplier acts blockwise as left multiplication by a_pi, whose
  // adjoint in this geometry is left multiplication by a_pi^*.
  struct BlockCtx {
    IrrepLabel pi;
    CMat sym;
    RVec q;
    double d;
  };
  std::vector<BlockCtx> ctx;
  for (const auto& pi : support) {
    const long dim = classical_dim(pi);
    CMat sym = CMat::Zero(dim, dim);
    if (const CMat* b = a.block(pi)) sym = *b;
    else if (a.extend() == MultiplierSymbol::Extend::identity) sym = CMat::Identity(dim, dim);
    ctx.push_back({pi, std::move(sym), q_matrix(model, pi), quantum_dim(model, pi)});
  }
  if (ctx.empty()) return 0.0;

  auto weighted_sq = [&](const std::vector<CMat>& blocks) {
    double t = 0.0;
    for (std::size_t k = 0; k < ctx.size(); ++k)
      for (Eigen::Index c = 0; c < blocks[k].cols(); ++c)
        for (Eigen::Index r = 0; r < blocks[k].rows(); ++r)
          t += ctx[k].d * ctx[k].q[c] * std::norm(blocks[k](r, c));
    return t;
  };

  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    std::vector<CMat> x;
    for (const auto& c : ctx) x.push_back(rng.gaussian_cmat(c.sym.rows(), c.sym.cols()));
    double nx = weighted_sq(x);
    if (nx <= 0.0) continue;
    for (int it = 0; it <= refine_iters; ++it) {
      std::vector<CMat> ax(ctx.size());
      for (std::size_t k = 0; k < ctx.size(); ++k) ax[k] = ctx[k].sym * x[k];
      const double nax = weighted_sq(ax);
      best = std::max(best, std::sqrt(nax / nx));
      if (it == refine_iters || nax <= 0.0) break;
      // power step: x <- a^* a x, renormalized
      for (std::size_t k = 0; k < ctx.size(); ++k) x[k] = ctx[k].sym.adjoint() * ax[k];
      nx = weighted_sq(x);
      if (nx <= 0.0) break;
      const double scale = 1.0 / std::sqrt(nx);
      for (auto& b : x) b *= scale;
      nx = 1.0;
    }
  }
  return best;
}

nlohmann::ordered_json to_json(const FourierElement& x) {
  nlohmann::ordered_json j;
  j["model"] = x.model().qs();
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& [pi, b] : x.blocks()) {
    nlohmann::ordered_json e;
    e["irrep"] = pi.str();
    std::vector<std::vector<double>> re(b.rows()), im(b.rows());
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      re[r].resize(b.cols());
      im[r].resize(b.cols());
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        re[r][c] = b(r, c).real();
        im[r][c] = b(r, c).imag();
      }
    }
    e["re"] = re;
    e["im"] = im;
    j["blocks"].push_back(std::move(e));
  }
  return j;
}

FourierElement fourier_from_json(const nlohmann::json& j) {
  QuantumGroupModel model(j.at("model").get<std::vector<double>>());
  FourierElement out(model);
  for (const auto& e : j.at("blocks")) {
    const IrrepLabel pi = IrrepLabel::parse(e.at("irrep").get<std::string>());
    const auto re = e.at("re").get<std::vector<std::vector<double>>>();
    const auto im = e.at("im").get<std::vector<std::vector<double>>>();
    if (re.empty() || re.size() != im.size())
      throw std::invalid_argument("fourier_from_json: bad matrix payload");
    CMat b(re.size(), re[0].size());
    for (std::size_t r = 0; r < re.size(); ++r) {
      if (re[r].size() != static_cast<std::size_t>(b.cols()) || im[r].size() != re[r].size())
        throw std::invalid_argument("fourier_from_json: ragged matrix payload");
      for (std::size_t c = 0; c < re[r].size(); ++c) b(r, c) = Complex(re[r][c], im[r][c]);
    }
    out.set_block(pi, std::move(b));
  }
  return out;
}

}  // namespace lacuna
