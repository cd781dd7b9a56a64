#include "lacuna/gns.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lacuna/rng.hpp"

namespace lacuna {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Banded complex matrix: entry (i, j) may be nonzero only when
// -lo <= j - i <= hi. Stored dense for simplicity; the band bookkeeping is
// what keeps products and matvecs cheap at trunc = 64..256.
struct Banded {
  CMat m;
  int lo = 0;  // subdiagonals
  int hi = 0;  // superdiagonals

  int dim() const { return static_cast<int>(m.rows()); }
};

Banded banded_identity(int n) { return {CMat::Identity(n, n), 0, 0}; }

Banded banded_product(const Banded& a, const Banded& b) {
  const int n = a.dim();
  Banded out{CMat::Zero(n, n), std::min(n - 1, a.lo + b.lo), std::min(n - 1, a.hi + b.hi)};
  for (int i = 0; i < n; ++i) {
    const int jmin = std::max(0, i - out.lo);
    const int jmax = std::min(n - 1, i + out.hi);
    for (int j = jmin; j <= jmax; ++j) {
      Complex s(0.0, 0.0);
      const int kmin = std::max({0, i - a.lo, j - b.hi});
      const int kmax = std::min({n - 1, i + a.hi, j + b.lo});
      for (int k = kmin; k <= kmax; ++k) s += a.m(i, k) * b.m(k, j);
      out.m(i, j) = s;
    }
  }
  return out;
}

void banded_accumulate(Banded& acc, const Banded& x, Complex coeff) {
  acc.m += coeff * x.m;
  acc.lo = std::max(acc.lo, x.lo);
  acc.hi = std::max(acc.hi, x.hi);
}

// y = M x restricted to the leading `n` rows/columns of the banded matrix.
void banded_matvec(const Banded& b, int n, const CVec& x, CVec& y) {
  for (int i = 0; i < n; ++i) {
    Complex s(0.0, 0.0);
    const int jmin = std::max(0, i - b.lo);
    const int jmax = std::min(n - 1, i + b.hi);
    for (int j = jmin; j <= jmax; ++j) s += b.m(i, j) * x[j];
    y[i] = s;
  }
}

void banded_matvec_adjoint(const Banded& b, int n, const CVec& x, CVec& y) {
  for (int j = 0; j < n; ++j) y[j] = Complex(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const int jmin = std::max(0, i - b.lo);
    const int jmax = std::min(n - 1, i + b.hi);
    for (int j = jmin; j <= jmax; ++j) y[j] += std::conj(b.m(i, j)) * x[i];
  }
}

// Largest singular value of the leading n x n block, via power iteration on
// M*M with an eigensolver fallback when the iteration stalls.
double banded_top_singular(const Banded& b, int n) {
  CVec v(n), w(n), u(n);
  RngStream rng(0x5EEDBA5Eu, static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) v[i] = rng.cnormal();
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;

  double est = 0.0;
  for (int it = 0; it < 3000; ++it) {
    banded_matvec(b, n, v, w);
    const double nw2 = w.squaredNorm();
    if (nw2 == 0.0) return 0.0;
    const double next = std::sqrt(nw2);  // ||Mv|| <= sigma_1, nondecreasing
    banded_matvec_adjoint(b, n, w, u);
    const double nu = u.norm();
    if (nu == 0.0) return next;
    v = u / nu;
    if (it > 8 && std::abs(next - est) <= 1e-12 * next + 1e-300) return next;
    est = next;
  }
  // Stalled: fall back to the dense Hermitian eigensolver on M*M.
  const CMat block = b.m.topLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<CMat> es(block.adjoint() * block);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Banded gns_generator(Gen gen, double q, double theta, int dim) {
  Banded out{CMat::Zero(dim, dim), 0, 0};
  switch (gen) {
    case Gen::a:
      out.hi = 1;
      for (int k = 1; k < dim; ++k)
        out.m(k - 1, k) = std::sqrt(1.0 - std::pow(q, 2 * k));
      break;
    case Gen::a_star:
      out.lo = 1;
      for (int k = 1; k < dim; ++k)
        out.m(k, k - 1) = std::sqrt(1.0 - std::pow(q, 2 * k));
      break;
    case Gen::g:
      for (int k = 0; k < dim; ++k)
        out.m(k, k) = std::polar(std::pow(q, k), theta);
      break;
    case Gen::g_star:
      for (int k = 0; k < dim; ++k)
        out.m(k, k) = std::polar(std::pow(q, k), -theta);
      break;
  }
  return out;
}

Banded represent(const GeneratorPoly& p, double q, double theta, int dim) {
  Banded acc{CMat::Zero(dim, dim), 0, 0};
  for (const auto& term : p.terms()) {
    Banded word = banded_identity(dim);
    for (Gen g : term.word) word = banded_product(word, gns_generator(g, q, theta, dim));
    banded_accumulate(acc, word, term.coeff);
  }
  return acc;
}

}  // namespace

void GeneratorPoly::add_term(std::vector<Gen> word, Complex coeff) {
  if (coeff != Complex(0.0, 0.0)) terms_.push_back({std::move(word), coeff});
}

int GeneratorPoly::max_word_length() const {
  std::size_t len = 0;
  for (const auto& t : terms_) len = std::max(len, t.word.size());
  return static_cast<int>(len);
}

bool GeneratorPoly::uses_gamma() const {
  for (const auto& t : terms_)
    for (Gen g : t.word)
      if (g == Gen::g || g == Gen::g_star) return true;
  return false;
}

std::string GeneratorPoly::str() const {
  if (terms_.empty()) return "(0+0i)*1";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << '(' << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i)*";
    if (t.word.empty()) {
      out << '1';
      continue;
    }
    bool first_letter = true;
    for (Gen g : t.word) {
      if (!first_letter) out << ' ';
      first_letter = false;
      switch (g) {
        case Gen::a: out << 'a'; break;
        case Gen::a_star: out << "a*"; break;
        case Gen::g: out << 'g'; break;
        case Gen::g_star: out << "g*"; break;
      }
    }
  }
  return out.str();
}

GeneratorPoly GeneratorPoly::parse(const std::string& text) {
  GeneratorPoly poly;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Skip whitespace and the joining '+'.
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '+'))
      ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != '(')
      throw std::invalid_argument("GeneratorPoly: expected '(re+imi)' coefficient");
    const std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("GeneratorPoly: unclosed '('");
    const std::string body = text.substr(pos + 1, close - pos - 1);
    // Coefficient "re<sign>im i".
    if (body.empty() || body.back() != 'i')
      throw std::invalid_argument("GeneratorPoly: coefficient must end in 'i'");
    std::size_t split = body.size() - 1;
    while (split > 0 && body[split] != '+' && body[split] != '-') --split;
    if (split == 0) throw std::invalid_argument("GeneratorPoly: bad coefficient '" + body + "'");
    const double re = std::stod(body.substr(0, split));
    const double im = std::stod(body.substr(split, body.size() - 1 - split));
    pos = close + 1;
    if (pos >= text.size() || text[pos] != '*')
      throw std::invalid_argument("GeneratorPoly: expected '*' after coefficient");
    ++pos;
    // Word: letters until the next top-level '+'.
    std::vector<Gen> word;
    bool unit_seen = false;
    while (pos < text.size() && text[pos] != '+') {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      const char c = text[pos];
      if (c == '1') {
        unit_seen = true;
        ++pos;
        continue;
      }
      Gen g;
      if (c == 'a')
        g = Gen::a;
      else if (c == 'g')
        g = Gen::g;
      else
        throw std::invalid_argument(std::string("GeneratorPoly: bad letter '") + c + "'");
      ++pos;
      if (pos < text.size() && text[pos] == '*') {
        g = (g == Gen::a) ? Gen::a_star : Gen::g_star;
        ++pos;
      }
      word.push_back(g);
    }
    if (unit_seen && !word.empty())
      throw std::invalid_argument("GeneratorPoly: '1' cannot be mixed with letters");
    poly.add_term(std::move(word), Complex(re, im));
  }
  return poly;
}

double gns_norm_estimate(const GeneratorPoly& p, double q, int trunc, int theta_grid) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("gns_norm_estimate: q must lie in (0, 1)");
  if (trunc < 2) throw std::invalid_argument("gns_norm_estimate: trunc must be >= 2");
  if (theta_grid < 1) throw std::invalid_argument("gns_norm_estimate: theta_grid must be >= 1");
  if (p.terms().empty()) return 0.0;

  // Working dimension trunc + L so the compression P_N pi(p) P_N is exact:
  // each generator moves the basis index by at most one.
  const int extra = p.max_word_length();
  const int dim = trunc + extra;
  // gamma-free polynomials are theta-independent.
  const int grid = p.uses_gamma() ? theta_grid : 1;

  double best = 0.0;
  for (int t = 0; t < grid; ++t) {
    const double theta = kTwoPi * t / grid;
    const Banded rep = represent(p, q, theta, dim);
    best = std::max(best, banded_top_singular(rep, trunc));
  }
  return best;
}

GeneratorPoly fundamental_combo(const CMat& A, double q) {
  if (A.rows() != 2 || A.cols() != 2)
    throw std::invalid_argument("fundamental_combo: A must be 2x2");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("fundamental_combo: q must lie in (0, 1)");
  const double d = q + 1.0 / q;
  CMat B = A;  // B = A Q with Q = diag(1/q, q)
  B.col(0) /= q;
  B.col(1) *= q;
  GeneratorPoly p;
  p.add_term({Gen::a}, d * B(0, 0));                 // u_11 = alpha
  p.add_term({Gen::g_star}, -q * d * B(1, 0));       // u_12 = -q gamma*
  p.add_term({Gen::g}, d * B(0, 1));                 // u_21 = gamma
  p.add_term({Gen::a_star}, d * B(1, 1));            // u_22 = alpha*
  return p;
}

double fundamental_combo_norm(const CMat& A, double q, int trunc, int theta_grid) {
  return gns_norm_estimate(fundamental_combo(A, q), q, trunc, theta_grid);
}

double gns_relation_residual(double q, int trunc) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("gns_relation_residual: q must lie in (0, 1)");
  const int dim = trunc;
  const Banded a = gns_generator(Gen::a, q, 0.3, dim);
  const Banded as = gns_generator(Gen::a_star, q, 0.3, dim);
  const Banded g = gns_generator(Gen::g, q, 0.3, dim);
  const Banded gs = gns_generator(Gen::g_star, q, 0.3, dim);
  const CMat r1 = as.m * a.m + gs.m * g.m - CMat::Identity(dim, dim);
  const CMat r2 = a.m * as.m + q * q * (gs.m * g.m) - CMat::Identity(dim, dim);
  // Boundary row/column dim-1 carries the truncation defect.
  const int n = dim - 1;
  double res = 0.0;
  res = std::max(res, r1.topLeftCorner(n, n).cwiseAbs().maxCoeff());
  res = std::max(res, r2.topLeftCorner(n, n).cwiseAbs().maxCoeff());
  return res;
}

}  // namespace lacuna
