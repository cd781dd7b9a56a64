#pragma once

#include <map>
#include <string>
#include <vector>

#include "lacuna/common.hpp"

namespace lacuna {

// A finite Cartesian product of q-deformed SU(2) factors. Each component
// carries its deformation parameter q in (0, 1]; q = 1 is the classical
// (Kac, tracial) factor. Immutable after construction.
class QuantumGroupModel {
 public:
  explicit QuantumGroupModel(std::vector<double> qs);
  static QuantumGroupModel single(double q) { return QuantumGroupModel({q}); }

  int factors() const { return static_cast<int>(q_.size()); }
  double q(int component) const;
  const std::vector<double>& qs() const { return q_; }
  bool kac() const;

  friend bool operator==(const QuantumGroupModel& a, const QuantumGroupModel& b) {
    return a.q_ == b.q_;
  }

 private:
  std::vector<double> q_;
};

// Irreducible representation index: a finitely supported map from component
// index to a non-negative spin label n (dimension n + 1 in that factor).
// Components not stored are the trivial representation; the trivial factor
// is never materialized.
class IrrepLabel {
 public:
  IrrepLabel() = default;
  static IrrepLabel single(int n);
  static IrrepLabel product(const std::map<int, int>& indices);

  int level(int component) const;
  const std::map<int, int>& indices() const { return idx_; }
  bool trivial() const { return idx_.empty(); }
  bool valid_for(const QuantumGroupModel& model) const;

  // Textual form: single factor "n"; products "i0:n0,i1:n1" with ascending
  // component indices.
  std::string str() const;
  static IrrepLabel parse(const std::string& text);

  friend bool operator==(const IrrepLabel& a, const IrrepLabel& b) { return a.idx_ == b.idx_; }
  friend bool operator!=(const IrrepLabel& a, const IrrepLabel& b) { return !(a == b); }
  friend bool operator<(const IrrepLabel& a, const IrrepLabel& b) { return a.idx_ < b.idx_; }

 private:
  std::map<int, int> idx_;
};

// Diagonal of the positive intertwiner Q_pi in the basis where it is
// diagonal: for a single factor with label n this is
// (q^-n, q^-n+2, ..., q^n-2, q^n); products take the Kronecker product of
// the factor diagonals in ascending component order.
RVec q_matrix(const QuantumGroupModel& model, const IrrepLabel& pi);

// Quantum dimension d_pi = Tr(Q_pi) = Tr(Q_pi^-1).
double quantum_dim(const QuantumGroupModel& model, const IrrepLabel& pi);

// Classical dimension: product of (n_i + 1).
long classical_dim(const IrrepLabel& pi);

// Fusion multiset of the tensor product pi (x) pi2. Per factor the labels
// run over |m - m2|, |m - m2| + 2, ..., m + m2; factors fuse independently
// (Cartesian product). Result is sorted; multiplicities appear as repeats.
std::vector<IrrepLabel> fuse(const IrrepLabel& pi, const IrrepLabel& pi2);

}  // namespace lacuna
