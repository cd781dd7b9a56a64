#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lacuna/central.hpp"
#include "lacuna/common.hpp"
#include "lacuna/rep.hpp"
#include "lacuna/report.hpp"

namespace lacuna {

// Finite, duplicate-free, sorted set of irreducible representation labels.
struct IrrepSet {
  QuantumGroupModel model;
  std::vector<IrrepLabel> labels;

  IrrepSet(QuantumGroupModel m, std::vector<IrrepLabel> ls);
  bool single_factor() const { return model.factors() == 1; }
  std::vector<int> levels() const;  // single-factor labels as integers
};

// Gap set n_0, n_k = n_{k-1} + k (triangular numbers when n_0 = 0).
IrrepSet gap_set(const QuantumGroupModel& model, int count, int n0 = 0);
bool is_gap_set(const IrrepSet& set, int n0 = 0);

// Certified fourth-moment constant for the gap set at deformation q:
//   K  = max(1, max_{x >= 1} (x + 1) q^(x/2))      (closed form)
//   K' = q^(1/4) / ((1 - q^(1/4)) (1 - q^(1/8)))
//   Kq = (2 K (4 K'^2 + 1) / (1 - q^(1/2)))^(1/4)
struct KqParts {
  double k;
  double k_prime;
  double kq;
};
KqParts kq_constant_parts(double q);
double kq_constant(double q);

// Estimates sup ||f||_4 / ||f||_2 over central polynomials supported on the
// first `first_n` labels of the set: `trials` random unit coefficient
// vectors plus `multistarts` projected-gradient ascents of the quartic
// Rayleigh quotient. The certified bound kq_constant(q) is attached when
// the set is the gap set and q < 1. Extra warm starts may be supplied.
LacunaReport central_lambda4_ratio(const IrrepSet& set, int first_n, int trials,
                                   int multistarts, std::uint64_t seed,
                                   const std::vector<CVec>& extra_starts = {});

// Modular-matrix screening: max ||Q_pi|| and max ||Q_pi^-1|| over the set
// (equal by symmetry of the exponent range). Bounded Q on the set is a
// necessary condition for lacunarity; this is a screening tool, not a proof.
struct QScreenResult {
  double max_q_norm;
  double max_q_inv_norm;
  bool within_threshold;
  double threshold;
};
QScreenResult check_q_boundedness(const IrrepSet& set,
                                  double threshold = std::numeric_limits<double>::infinity());

// Unconditionality ratio of the fundamental corepresentation:
// ||combo(V A)|| / ||combo(A)||, both sides through fundamental_combo_norm
// at identical truncation. The bound is (1 + 1/q) up to truncation slack.
// V must be unitary to 1e-10; A = 0 is rejected.
double sidon_singleton_check(double q, const CMat& A, const CMat& V, int trunc = 64,
                             int theta_grid = 256);

// Estimated norm of the scalar central multiplier chi_n -> c_n chi_n on
// central polynomials supported on the set, in L^p for p in {2, 4}.
double central_multiplier_probe(const IrrepSet& set, const std::map<int, Complex>& symbol,
                                int p, int trials, std::uint64_t seed);

// One coefficient cell of the layered extraction.
struct RefineCell {
  IrrepLabel label;
  int row;
  int col;
};

// Extractor callback: given the residual pool of cells, returns the selected
// pool positions and the constant certified for that round.
using Extractor =
    std::function<std::pair<std::vector<int>, double>(const std::vector<RefineCell>&)>;

struct RefineResult {
  std::vector<IrrepLabel> final_labels;
  std::vector<double> round_constants;
  int rounds = 0;
  bool ok = false;
  std::string diagnostic;
};

// Layered bookkeeping over coefficient cells: each round extracts a
// subfamily from the residual cells of the surviving labels, drops labels
// that contributed nothing, and stops when the survivors' cells are
// exhausted. Terminates within (max dim)^2 rounds.
RefineResult refine_by_irreps(const IrrepSet& set, const std::vector<int>& dims,
                              const Extractor& extractor, int p);

// Table of (n, central_l4(chi_n)^4): grows linearly (n + 1) at q = 1 and is
// bounded and Cauchy for q < 1.
std::vector<std::pair<int, double>> classical_contrast(int n_max, double q);

}  // namespace lacuna
