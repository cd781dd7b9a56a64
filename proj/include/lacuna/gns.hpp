#pragma once

#include <string>
#include <vector>

#include "lacuna/common.hpp"

namespace lacuna {

// Noncommutative *-polynomial in the two generators of the q-deformed SU(2)
// algebra, written over the letters a, a*, g, g* (alpha, alpha*, gamma,
// gamma*). Words multiply left-to-right as written; no reordering.
enum class Gen { a, a_star, g, g_star };

struct GeneratorTerm {
  std::vector<Gen> word;  // empty word is the unit
  Complex coeff;
};

class GeneratorPoly {
 public:
  GeneratorPoly() = default;
  explicit GeneratorPoly(std::vector<GeneratorTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<GeneratorTerm>& terms() const { return terms_; }
  void add_term(std::vector<Gen> word, Complex coeff);
  int max_word_length() const;
  bool uses_gamma() const;

  // Text form: terms joined by " + ", each "(re+imi)*letters", letters
  // space-separated from {a, a*, g, g*} with "1" for the unit word.
  std::string str() const;
  static GeneratorPoly parse(const std::string& text);

 private:
  std::vector<GeneratorTerm> terms_;
};

// Certified lower bound for the operator norm of p in the q-deformed SU(2)
// C*-algebra: the compressions P_N pi_theta(p) P_N of the standard
// infinite-dimensional representation
//   alpha e_k = sqrt(1 - q^(2k)) e_(k-1),  gamma e_k = e^(i theta) q^k e_k
// are evaluated exactly on the first `trunc` basis vectors and the largest
// singular value is maximized over a theta grid of `theta_grid` points.
// Nondecreasing in trunc; requires 0 < q < 1.
double gns_norm_estimate(const GeneratorPoly& p, double q, int trunc = 64, int theta_grid = 256);

// Linear combination of the fundamental 2x2 corepresentation entries with
// coefficient matrix A: the element d * sum_ij (A Q)_ji u_ij where
// u = [[alpha, -q gamma*], [gamma, alpha*]], Q = diag(1/q, q), d = q + 1/q.
GeneratorPoly fundamental_combo(const CMat& A, double q);

// gns_norm_estimate of fundamental_combo(A, q).
double fundamental_combo_norm(const CMat& A, double q, int trunc = 64, int theta_grid = 256);

// Max violation of the unitarity relations of the fundamental matrix
// (alpha* alpha + gamma* gamma = 1 and alpha alpha* + q^2 gamma* gamma = 1)
// over the truncated representation, boundary row excluded. Diagnostic.
double gns_relation_residual(double q, int trunc);

}  // namespace lacuna
