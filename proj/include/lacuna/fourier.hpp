#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lacuna/common.hpp"
#include "lacuna/rep.hpp"

#include "json.hpp"

namespace lacuna {

// Fourier-side element: finitely supported blocks pi -> xhat(pi), each a
// dim(pi) x dim(pi) complex matrix in the Q-diagonal basis. Zero blocks may
// be dropped; equality is up to zero-block padding.
class FourierElement {
 public:
  explicit FourierElement(QuantumGroupModel model) : model_(std::move(model)) {}

  const QuantumGroupModel& model() const { return model_; }
  const std::map<IrrepLabel, CMat>& blocks() const { return blocks_; }

  void set_block(const IrrepLabel& pi, CMat block);
  const CMat* block(const IrrepLabel& pi) const;
  // Block with zero-padding semantics: zero matrix when absent.
  CMat block_or_zero(const IrrepLabel& pi) const;

  bool empty() const { return blocks_.empty(); }
  // Drops blocks with max-norm <= eps.
  FourierElement trimmed(double eps = 0.0) const;

 private:
  QuantumGroupModel model_;
  std::map<IrrepLabel, CMat> blocks_;
};

bool approx_equal(const FourierElement& a, const FourierElement& b, double tol);

// Multiplier symbol a = (a_pi). Off-support blocks default to zero
// (projection multipliers); the identity-extend flag covers symbols that act
// as the identity outside their stored support.
class MultiplierSymbol {
 public:
  enum class Extend { zero, identity };

  explicit MultiplierSymbol(Extend extend = Extend::zero) : extend_(extend) {}

  Extend extend() const { return extend_; }
  const std::map<IrrepLabel, CMat>& blocks() const { return blocks_; }
  void set_block(const IrrepLabel& pi, CMat block);
  const CMat* block(const IrrepLabel& pi) const;

 private:
  Extend extend_;
  std::map<IrrepLabel, CMat> blocks_;
};

enum class Side { left, right };

// Fourier coefficients from matrix coefficients: an element
// x = sum x_ij u_ij^(pi) with coefficient matrices X_pi = [x_ji] has
// xhat(pi) = d_pi^-1 X_pi Q_pi^-1.
FourierElement from_coefficients(const QuantumGroupModel& model,
                                 const std::map<IrrepLabel, CMat>& X);

// Haar-state pairings of matrix coefficients:
//   haar_pair:      h(u_ij^(pi) (u_lm^(pi2))^*) = delta_{pi,pi2} delta_il (Q_pi)_mj / d_pi
//   haar_pair_star: h((u_ij^(pi))^* u_lm^(pi2)) = delta_{pi,pi2} delta_jm (Q_pi^-1)_li / d_pi
// Indices are zero-based and must lie within dim(pi).
Complex haar_pair(const QuantumGroupModel& model, const IrrepLabel& pi, int i, int j,
                  const IrrepLabel& pi2, int l, int m);
Complex haar_pair_star(const QuantumGroupModel& model, const IrrepLabel& pi, int i, int j,
                       const IrrepLabel& pi2, int l, int m);

// L2 norm: ( sum_pi d_pi Tr(Q_pi xhat(pi)^* xhat(pi)) )^(1/2).
double l2_norm(const FourierElement& x);

// Dual l1 norm: sum_pi d_pi Tr(|xhat(pi) Q_pi|).
double l1_dual_norm(const FourierElement& x);

// sup_pi ||xhat(pi)||_op over stored blocks.
double sup_block_norm(const FourierElement& x);

// Convolution on the Fourier side: (phi * psi)^(pi) = psihat(pi) phihat(pi).
FourierElement convolve(const FourierElement& phi, const FourierElement& psi);

// Multiplier action on Fourier blocks:
//   left:  xhat(pi) <- xhat(pi) Q_pi a_pi Q_pi^-1
//   right: xhat(pi) <- a_pi xhat(pi)
FourierElement apply_multiplier(Side side, const MultiplierSymbol& a, const FourierElement& x);

// Modular-group action on the Fourier side: xhat(pi) <- Q_pi^(iz) xhat(pi) Q_pi^(iz),
// with entrywise principal powers of the positive diagonal Q_pi.
FourierElement modular_transform(Complex z, const FourierElement& x);

// Multiplier norm on L2: sup_pi ||a_pi||_op (identity extension contributes 1).
double l2_multiplier_norm(const MultiplierSymbol& a);

// Sampled estimate of the same quantity: max over `trials` random starts of
// ||m_a^R x||_2 / ||x||_2, each start refined by `refine_iters` power
// iterations on the supplied support. Lower bound of l2_multiplier_norm.
double l2_multiplier_norm_sampled(const MultiplierSymbol& a, const QuantumGroupModel& model,
                                  const std::vector<IrrepLabel>& support, int trials,
                                  std::uint64_t seed, int refine_iters = 0);

nlohmann::ordered_json to_json(const FourierElement& x);
FourierElement fourier_from_json(const nlohmann::json& j);

}  // namespace lacuna
