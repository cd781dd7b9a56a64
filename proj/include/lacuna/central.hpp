#pragma once

#include <map>

#include "lacuna/common.hpp"
#include "lacuna/fourier.hpp"
#include "lacuna/rep.hpp"

#include "json.hpp"

namespace lacuna {

// Central polynomial sum_n c_n chi_n on a single q-deformed SU(2) factor,
// stored by character coefficients. Characters are self-adjoint, so the
// adjoint polynomial just conjugates the coefficients.
class CentralPoly {
 public:
  explicit CentralPoly(QuantumGroupModel model) : model_(std::move(model)) {
    if (model_.factors() != 1)
      throw std::invalid_argument("CentralPoly: single-factor models only");
  }
  CentralPoly(QuantumGroupModel model, std::map<int, Complex> coeffs)
      : CentralPoly(std::move(model)) {
    for (auto& [n, c] : coeffs) set(n, c);
  }

  const QuantumGroupModel& model() const { return model_; }
  double q() const { return model_.q(0); }
  const std::map<int, Complex>& coeffs() const { return coeffs_; }
  void set(int n, Complex c);
  Complex coeff(int n) const;
  int max_level() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

 private:
  QuantumGroupModel model_;
  std::map<int, Complex> coeffs_;
};

CentralPoly central_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const CentralPoly& f);

// Bridge to the Fourier side: coefficient matrices X_n = c_n Id.
FourierElement to_fourier(const CentralPoly& f);

// ||f||_2 = (sum |c_n|^2)^(1/2); the characters are orthonormal in L2.
double central_l2(const CentralPoly& f);

// Fourth-moment pairing weight of a single character: (m + 1) / d_m.
double character_l4_pairing(const QuantumGroupModel& model, int m);

// ||f||_4 for central f: expand f^* f = sum_m t_m chi_m over the fusion
// rules and return (sum_m t_m^2 * character_l4_pairing(m))^(1/4).
double central_l4(const CentralPoly& f);

// ||f||_4^4 without the fourth-root round trip (exact integer arithmetic
// at q = 1).
double central_l4_pow4(const CentralPoly& f);

// Fusion coefficients t_m of f^* f (exact integer fusion membership; the
// weighted quartic sum in central_l4 uses compensated summation).
std::vector<double> self_product_fusion(const CentralPoly& f);

struct SupNormResult {
  double value;
  double grid_error;  // bound on how far the true sup can exceed `value`
  double argmax;      // theta achieving the reported value
  operator double() const { return value; }
};

// Sup norm of a central polynomial. Central polynomials transfer to the
// classical SU(2) character ring isometrically, so the value is the maximum
// over theta in [0, pi] of |sum c_n sin((n+1)theta)/sin(theta)|, evaluated
// on a grid with endpoint limits sum c_n (n+1) and sum c_n (-1)^n (n+1) and
// refined by golden-section search around the grid argmax.
SupNormResult central_sup_norm(const CentralPoly& f, int grid = 256);

// L2 norm with interpolation parameter theta in [0, 1]:
// l2_norm(modular_transform(-i theta / 2, x)).
double l2_theta_norm(const FourierElement& x, double theta);

// Pointwise value of the classical character sum at angle theta (with the
// removable singularities at 0 and pi filled in). Exposed for the CLI and
// the quadrature cross-checks.
Complex classical_character_value(const CentralPoly& f, double theta);

}  // namespace lacuna
