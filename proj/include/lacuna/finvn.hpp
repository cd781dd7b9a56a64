#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/common.hpp"

#include "json.hpp"

namespace lacuna {

// Finite-dimensional von Neumann algebra M_N with a faithful state
// phi(x) = Tr(rho x), rho positive definite with unit trace. The spectral
// decomposition of rho is cached for the modular group and the weighted
// Schatten norms.
class StateAlgebra {
 public:
  explicit StateAlgebra(CMat rho);
  static StateAlgebra from_eigenvalues(const RVec& eigs);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMat& rho() const { return rho_; }
  double condition_number() const { return cond_; }
  bool ill_conditioned() const { return cond_ > 1e8; }

  // rho^s for real s (re-Hermitized) and rho^w for complex w.
  CMat power(double s) const;
  CMat cpower(Complex w) const;

  Complex phi(const CMat& x) const;                      // Tr(rho x)
  Complex inner(const CMat& x, const CMat& y) const;     // phi(x^* y)

 private:
  CMat rho_;
  CMat basis_;   // unitary of eigenvectors
  RVec eigs_;    // positive eigenvalues
  double cond_;
};

StateAlgebra algebra_from_json(const nlohmann::json& j);

// Haagerup L^p norm with interpolation parameter theta in [0, 1]:
// Schatten-p norm of rho^(theta/p) x rho^((1-theta)/p). Requires p >= 1.
double haagerup_lp_norm(const StateAlgebra& a, const CMat& x, double p, double theta = 0.0);

// Modular group sigma_z(x) = rho^(iz) x rho^(-iz) (complex z via the
// spectral decomposition).
CMat modular_sigma(const StateAlgebra& a, Complex z, const CMat& x);

// phi-orthogonal system: phi(x_i^* x_j) = 0 for i != j.
struct OrthoSystem {
  StateAlgebra algebra;
  std::vector<CMat> elements;
  bool normalized = false;          // phi-norm 1 elements
  std::vector<int> dropped;         // input indices removed as phi-null
  double max_cross = 0.0;           // largest off-diagonal |phi(x_i^* x_j)|

  // K = max(1, sup_i ||x_i||_{2n, theta=0}).
  double k_bound(int n) const;
};

// Sequential phi-Gram-Schmidt: y_{k+1} = x_{k+1} - sum_l phi(y_l^* y_l)^{-1}
// phi(y_l^* x_{k+1}) y_l, with near-null vectors (phi-norm < 1e-10 relative)
// dropped and reported. Throws if every input is null.
OrthoSystem gram_schmidt_phi(const StateAlgebra& a, const std::vector<CMat>& xs,
                             bool normalize = true);

// Twisted correlation of order n = pairs.size() + 1:
//   phi( sigma_{(n-1)i/n}(a_1^* b_1) sigma_{(n-2)i/n}(a_2^* b_2) ...
//        sigma_{i/n}(a_{n-1}^* b_{n-1}) tail_left^* tail_right ).
Complex twisted_correlation(const StateAlgebra& a,
                            const std::vector<std::pair<CMat, CMat>>& pairs,
                            const CMat& tail_left, const CMat& tail_right);

// Companion sigma_i-leading variant:
//   phi( sigma_i(tail_left) sigma_{(n-1)i/n}(a_1^* b_1) ...
//        sigma_{i/n}(a_{n-1}^* b_{n-1}) tail_right^* ).
Complex twisted_correlation_adjoint(const StateAlgebra& a,
                                    const std::vector<std::pair<CMat, CMat>>& pairs,
                                    const CMat& tail_left, const CMat& tail_right);

struct GreedySelection {
  std::vector<int> indices;   // positions in the pool, selection order
  double constant;            // certified C (inf if it overflows)
  double log_constant;        // log C, always finite
  double k_bound;             // K used in the certificate
  int order;                  // n (p = 2n)
  bool complete;              // target_count reached before pool exhaustion
};

// Certified constant of the extraction: C^(2n) =
// (2 K^(2n) + K^n 4^n n + n pi^2/6) * exp(K^n 4^n n).
double lambda_certified_log_constant(double k_bound, int n);
double lambda_certified_constant(double k_bound, int n);

// Greedy scan of the pool in order. Element k+1 is the smallest-index
// candidate whose twisted correlations (both variants) against every tuple
// of already-selected elements stay within 1/(2 k^(2n-1) (k+1)) in modulus.
// Stops at target_count or pool exhaustion (partial result flagged).
GreedySelection greedy_lambda_select(const OrthoSystem& pool, int n, int target_count);

// Post-hoc audit: re-evaluates every threshold the greedy selection was
// accepted under via the public twisted_correlation entry points. Returns
// the worst margin threshold - |correlation| (negative means a violation).
double greedy_threshold_audit(const OrthoSystem& pool, const GreedySelection& sel);

// Max over `trials` random unit coefficient vectors (plus the standard basis
// vectors) of ||sum c_k x_k||_p / ||c||_2.
double lambda_ratio_check(const StateAlgebra& a, const std::vector<CMat>& elements, double p,
                          int trials, std::uint64_t seed);

struct KhintchineResult {
  double lhs;           // ( avg over signs of ||sum eps_k x_k||_p^p )^(1/p)
  double crp;           // max of column / row square-function norms
  double ratio;         // lhs / crp
  bool exhaustive;      // true when all 2^m sign patterns were enumerated
  std::int64_t patterns;
};

// Random-sign average of Haagerup p-norms against the CR_p square-function
// norm (column/row norms of x_k rho^(1/p)). Exact over all 2^m patterns for
// m <= exhaustive_up_to, Monte-Carlo otherwise.
KhintchineResult khintchine_sample(const StateAlgebra& a, const std::vector<CMat>& elements,
                                   double p, int exhaustive_up_to = 12, int trials = 10000,
                                   std::uint64_t seed = 0);

// Named element families for the CLI and the test batteries.
std::vector<CMat> family_matrix_units(int N);
std::vector<CMat> family_fourier_unitaries(int N);
std::vector<CMat> family_random_gaussian(int N, int count, std::uint64_t seed);

// Random well-conditioned state: eigenvalues uniform in [1, 2] (normalized),
// eigenbasis from a QR-orthonormalized Gaussian matrix.
StateAlgebra random_state(int N, std::uint64_t seed);

}  // namespace lacuna
