#include "lacuna/central.hpp"

#include <cmath>
#include <stdexcept>

namespace lacuna {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

void CentralPoly::set(int n, Complex c) {
  if (n < 0) throw std::invalid_argument("CentralPoly: level must be >= 0");
  if (c == Complex(0.0, 0.0))
    coeffs_.erase(n);
  else
    coeffs_[n] = c;
}

Complex CentralPoly::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

CentralPoly central_from_json(const nlohmann::json& j) {
  CentralPoly f(QuantumGroupModel::single(j.at("q").get<double>()));
  for (const auto& [key, val] : j.at("coeffs").items()) {
    const int n = std::stoi(key);
    const auto pair = val.get<std::vector<double>>();
    if (pair.size() != 2)
      throw std::invalid_argument("central_from_json: coefficient must be [re, im]");
    f.set(n, Complex(pair[0], pair[1]));
  }
  return f;
}

nlohmann::ordered_json to_json(const CentralPoly& f) {
  nlohmann::ordered_json j;
  j["q"] = f.q();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
  for (const auto& [n, c] : f.coeffs())
    coeffs[std::to_string(n)] = std::vector<double>{c.real(), c.imag()};
  j["coeffs"] = std::move(coeffs);
  return j;
}

FourierElement to_fourier(const CentralPoly& f) {
  std::map<IrrepLabel, CMat> X;
  for (const auto& [n, c] : f.coeffs()) {
    const long d = n + 1;
    X[IrrepLabel::single(n)] = c * CMat::Identity(d, d);
  }
  return from_coefficients(f.model(), X);
}

double central_l2(const CentralPoly& f) {
  KahanSum acc;
  for (const auto& [n, c] : f.coeffs()) acc.add(std::norm(c));
  return std::sqrt(acc.value());
}

double character_l4_pairing(const QuantumGroupModel& model, int m) {
  if (model.factors() != 1)
    throw std::invalid_argument("character_l4_pairing: single-factor models only");
  if (m < 0) throw std::invalid_argument("character_l4_pairing: level must be >= 0");
  return (m + 1) / quantum_dim(model, IrrepLabel::single(m));
}

std::vector<double> self_product_fusion(const CentralPoly& f) {
  const int top = f.max_level();
  if (top < 0) return {};
  std::vector<double> t(static_cast<std::size_t>(2 * top) + 1, 0.0);
  for (const auto& [i, ci] : f.coeffs()) {
    for (const auto& [j, cj] : f.coeffs()) {
      const Complex w = std::conj(ci) * cj;
      for (int m = std::abs(i - j); m <= i + j; m += 2) t[m] += w.real();
    }
  }
  return t;
}

double central_l4_pow4(const CentralPoly& f) {
  const std::vector<double> t = self_product_fusion(f);
  KahanSum acc;
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (t[m] != 0.0)
      acc.add(t[m] * t[m] * character_l4_pairing(f.model(), static_cast<int>(m)));
  }
  return acc.value();
}

double central_l4(const CentralPoly& f) { return std::pow(central_l4_pow4(f), 0.25); }

Complex classical_character_value(const CentralPoly& f, double theta) {
  const double s = std::sin(theta);
  Complex v(0.0, 0.0);
  if (std::abs(s) < 1e-9) {
    const bool near_zero = std::cos(theta) > 0.0;
    for (const auto& [n, c] : f.coeffs()) {
      const double limit = (near_zero || n % 2 == 0) ? double(n + 1) : -double(n + 1);
      v += c * limit;
    }
    return v;
  }
  for (const auto& [n, c] : f.coeffs()) v += c * (std::sin((n + 1) * theta) / s);
  return v;
}

namespace {

// |f| on the classical side, for the scalar 1D search.
double abs_value(const CentralPoly& f, double theta) {
  return std::abs(classical_character_value(f, theta));
}

double golden_section_max(const CentralPoly& f, double lo, double hi, int iters = 60) {
  const double inv_phi = 0.61803398874989484820458683436564;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = abs_value(f, c);
  double fd = abs_value(f, d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = abs_value(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = abs_value(f, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SupNormResult central_sup_norm(const CentralPoly& f, int grid) {
  if (grid < 2) grid = 2;
  if (f.coeffs().empty()) return {0.0, 0.0, 0.0};

  // Lipschitz bound: |d/dtheta chi_n| <= sum_{j=0..n} |n - 2j| (the character
  // is a sum of n+1 unimodular exponentials with those frequencies).
  double lipschitz = 0.0;
  for (const auto& [n, c] : f.coeffs()) {
    double freq_sum = 0.0;
    for (int j = 0; j <= n; ++j) freq_sum += std::abs(n - 2 * j);
    lipschitz += std::abs(c) * freq_sum;
  }

  const double h = kPi / (grid - 1);
  double best = 0.0;
  int best_idx = 0;
  for (int i = 0; i < grid; ++i) {
    const double theta = (i == grid - 1) ? kPi : i * h;
    const double v = abs_value(f, theta);
    if (v > best) {
      best = v;
      best_idx = i;
    }
  }

  const double lo = std::max(0.0, (best_idx - 1) * h);
  const double hi = std::min(kPi, (best_idx + 1) * h);
  const double refined_theta = golden_section_max(f, lo, hi);
  double value = best;
  double argmax = best_idx * h;
  const double refined = abs_value(f, refined_theta);
  if (refined > value) {
    value = refined;
    argmax = refined_theta;
  }
  return {value, 0.5 * lipschitz * h, argmax};
}

double l2_theta_norm(const FourierElement& x, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("l2_theta_norm: theta must lie in [0, 1]");
  return l2_norm(modular_transform(Complex(0.0, -theta / 2.0), x));
}

}  // namespace lacuna
