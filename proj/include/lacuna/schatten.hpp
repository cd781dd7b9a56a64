#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "lacuna/common.hpp"

namespace lacuna {

// Schatten p-norm (sum of p-th powers of singular values)^(1/p), p >= 1.
template <typename Derived>
double schatten_norm(const Eigen::MatrixBase<Derived>& m, double p) {
  if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (p == 2.0) return m.norm();
  Eigen::JacobiSVD<CMat> svd(m.template cast<Complex>());
  const RVec& s = svd.singularValues();
  if (p == 1.0) return s.sum();
  KahanSum acc;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc.add(std::pow(s[i], p));
  return std::pow(acc.value(), 1.0 / p);
}

// Trace norm, Schatten p = 1.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return schatten_norm(m, 1.0);
}

// Operator norm (largest singular value).
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m.template cast<Complex>());
  return svd.singularValues()[0];
}

}  // namespace lacuna
