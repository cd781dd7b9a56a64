#include "lacuna/rep.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lacuna {

QuantumGroupModel::QuantumGroupModel(std::vector<double> qs) : q_(std::move(qs)) {
  if (q_.empty()) throw std::invalid_argument("QuantumGroupModel: component list is empty");
  for (double q : q_) {
    if (!(q > 0.0 && q <= 1.0))
      throw std::invalid_argument("QuantumGroupModel: every q must lie in (0, 1]");
  }
}

double QuantumGroupModel::q(int component) const {
  if (component < 0 || component >= factors())
    throw std::out_of_range("QuantumGroupModel: component out of range");
  return q_[static_cast<std::size_t>(component)];
}

bool QuantumGroupModel::kac() const {
  for (double q : q_)
    if (q != 1.0) return false;
  return true;
}

IrrepLabel IrrepLabel::single(int n) {
  if (n < 0) throw std::invalid_argument("IrrepLabel: spin label must be >= 0");
  IrrepLabel l;
  if (n > 0) l.idx_[0] = n;
  return l;
}

IrrepLabel IrrepLabel::product(const std::map<int, int>& indices) {
  IrrepLabel l;
  for (const auto& [comp, n] : indices) {
    if (comp < 0) throw std::invalid_argument("IrrepLabel: component index must be >= 0");
    if (n < 0) throw std::invalid_argument("IrrepLabel: spin label must be >= 0");
    if (n > 0) l.idx_[comp] = n;
  }
  return l;
}

int IrrepLabel::level(int component) const {
  auto it = idx_.find(component);
  return it == idx_.end() ? 0 : it->second;
}

bool IrrepLabel::valid_for(const QuantumGroupModel& model) const {
  return idx_.empty() || idx_.rbegin()->first < model.factors();
}

std::string IrrepLabel::str() const {
  if (idx_.empty()) return "0";
  if (idx_.size() == 1 && idx_.begin()->first == 0) return std::to_string(idx_.begin()->second);
  std::string out;
  for (const auto& [comp, n] : idx_) {
    if (!out.empty()) out += ',';
    out += std::to_string(comp) + ':' + std::to_string(n);
  }
  return out;
}

IrrepLabel IrrepLabel::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("IrrepLabel: empty label");
  if (text.find(':') == std::string::npos) {
    std::size_t pos = 0;
    const int n = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("IrrepLabel: bad label '" + text + "'");
    return single(n);
  }
  std::map<int, int> idx;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("IrrepLabel: bad component '" + part + "'");
    const int comp = std::stoi(part.substr(0, colon));
    const int n = std::stoi(part.substr(colon + 1));
    if (idx.count(comp)) throw std::invalid_argument("IrrepLabel: duplicate component");
    if (comp < 0 || n < 0) throw std::invalid_argument("IrrepLabel: negative entry");
    if (n > 0) idx[comp] = n;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return product(idx);
}

namespace {

RVec factor_q_diagonal(double q, int n) {
  RVec d(n + 1);
  for (int k = 0; k <= n; ++k) d[k] = std::pow(q, -n + 2 * k);
  return d;
}

}  // namespace

RVec q_matrix(const QuantumGroupModel& model, const IrrepLabel& pi) {
  if (!pi.valid_for(model))
    throw std::invalid_argument("q_matrix: label references a missing component");
  RVec out(1);
  out[0] = 1.0;
  for (const auto& [comp, n] : pi.indices()) {
    const RVec f = factor_q_diagonal(model.q(comp), n);
    RVec next(out.size() * f.size());
    for (Eigen::Index i = 0; i < out.size(); ++i)
      for (Eigen::Index j = 0; j < f.size(); ++j) next[i * f.size() + j] = out[i] * f[j];
    out.swap(next);
  }
  return out;
}

double quantum_dim(const QuantumGroupModel& model, const IrrepLabel& pi) {
  if (!pi.valid_for(model))
    throw std::invalid_argument("quantum_dim: label references a missing component");
  double d = 1.0;
  for (const auto& [comp, n] : pi.indices()) d *= factor_q_diagonal(model.q(comp), n).sum();
  return d;
}

long classical_dim(const IrrepLabel& pi) {
  long d = 1;
  for (const auto& [comp, n] : pi.indices()) d *= static_cast<long>(n) + 1;
  return d;
}

std::vector<IrrepLabel> fuse(const IrrepLabel& pi, const IrrepLabel& pi2) {
  // Components present in either label.
  std::vector<int> comps;
  for (const auto& [c, n] : pi.indices()) comps.push_back(c);
  for (const auto& [c, n] : pi2.indices())
    if (!pi.indices().count(c)) comps.push_back(c);
  std::sort(comps.begin(), comps.end());

  std::vector<std::map<int, int>> acc{{}};
  for (int c : comps) {
    const int m = pi.level(c);
    const int m2 = pi2.level(c);
    std::vector<std::map<int, int>> next;
    for (const auto& base : acc) {
      for (int r = std::abs(m - m2); r <= m + m2; r += 2) {
        auto copy = base;
        if (r > 0) copy[c] = r;
        next.push_back(std::move(copy));
      }
    }
    acc.swap(next);
  }

  std::vector<IrrepLabel> out;
  out.reserve(acc.size());
  for (const auto& idx : acc) out.push_back(IrrepLabel::product(idx));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lacuna
