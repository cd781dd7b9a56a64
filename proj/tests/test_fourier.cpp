#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lacuna/central.hpp"
#include "lacuna/fourier.hpp"
#include "lacuna/rng.hpp"
#include "lacuna/schatten.hpp"

using namespace lacuna;

namespace {

const QuantumGroupModel kHalf = QuantumGroupModel::single(0.5);

CMat unit_matrix(int dim, int r, int c) {
  CMat m = CMat::Zero(dim, dim);
  m(r, c) = 1.0;
  return m;
}

FourierElement random_element(const QuantumGroupModel& model, const std::vector<int>& levels,
                              RngStream& rng) {
  FourierElement x(model);
  for (int n : levels) x.set_block(IrrepLabel::single(n), rng.gaussian_cmat(n + 1, n + 1));
  return x;
}

}  // namespace

TEST_CASE("from_coefficients applies d^-1 X Q^-1") {
  // x = u_11 at q = 0.5: Q = diag(2, 1/2), d = 2.5, so xhat = 0.2 e_11.
  std::map<IrrepLabel, CMat> X;
  X[IrrepLabel::single(1)] = unit_matrix(2, 0, 0);
  const FourierElement x = from_coefficients(kHalf, X);
  const CMat* b = x.block(IrrepLabel::single(1));
  REQUIRE(b != nullptr);
  CHECK((*b - 0.2 * unit_matrix(2, 0, 0)).cwiseAbs().maxCoeff() < 1e-15);

  // Zero coefficients give the zero element.
  std::map<IrrepLabel, CMat> Z;
  Z[IrrepLabel::single(1)] = CMat::Zero(2, 2);
  CHECK(l2_norm(from_coefficients(kHalf, Z)) == 0.0);

  // Kac case: d = 2, Q = I, identity coefficients halve.
  std::map<IrrepLabel, CMat> XI;
  XI[IrrepLabel::single(1)] = CMat::Identity(2, 2);
  const FourierElement xi = from_coefficients(QuantumGroupModel::single(1.0), XI);
  CHECK((xi.block_or_zero(IrrepLabel::single(1)) - 0.5 * CMat::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  std::map<IrrepLabel, CMat> bad;
  bad[IrrepLabel::single(2)] = CMat::Identity(2, 2);
  CHECK_THROWS(from_coefficients(kHalf, bad));
}

TEST_CASE("Haar pairings") {
  const IrrepLabel one = IrrepLabel::single(1);
  CHECK(haar_pair(kHalf, one, 0, 0, one, 0, 0).real() == doctest::Approx(0.8));
  CHECK(haar_pair_star(kHalf, one, 0, 0, one, 0, 0).real() == doctest::Approx(0.2));
  CHECK(haar_pair(kHalf, one, 0, 0, IrrepLabel::single(2), 0, 0) == Complex(0.0, 0.0));
  CHECK(haar_pair(kHalf, one, 0, 1, one, 1, 1) == Complex(0.0, 0.0));
  CHECK_THROWS(haar_pair(kHalf, one, 0, 2, one, 0, 0));
}

TEST_CASE("l2 norm") {
  std::map<IrrepLabel, CMat> X;
  X[IrrepLabel::single(1)] = unit_matrix(2, 0, 0);
  CHECK(l2_norm(from_coefficients(kHalf, X)) == doctest::Approx(std::sqrt(0.2)));
  CHECK(l2_norm(FourierElement(kHalf)) == 0.0);

  // Central characters are L2-normalized.
  for (int m = 0; m <= 5; ++m) {
    CentralPoly f(kHalf);
    f.set(m, 1.0);
    CHECK(l2_norm(to_fourier(f)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Plancherel consistency against the Haar Gram form") {
  RngStream rng(11);
  for (double q : {0.3, 0.5, 0.9}) {
    const QuantumGroupModel model = QuantumGroupModel::single(q);
    for (int t = 0; t < 40; ++t) {
      const int n = static_cast<int>(rng.uniform_index(5));
      const int dim = n + 1;
      const CMat coeff = rng.gaussian_cmat(dim, dim);
      std::map<IrrepLabel, CMat> X;
      const IrrepLabel pi = IrrepLabel::single(n);
      X[pi] = coeff;
      const double lhs = std::pow(l2_norm(from_coefficients(model, X)), 2);
      // ||x||_2^2 = sum conj(x_ij) x_lm h(u_ij^* u_lm) for x = sum x_ij u_ij,
      // with X = [x_ji] the stored coefficient matrix.
      Complex gram(0.0, 0.0);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int l = 0; l < dim; ++l)
            for (int m = 0; m < dim; ++m)
              gram += std::conj(coeff(j, i)) * coeff(m, l) *
                      haar_pair_star(model, pi, i, j, pi, l, m);
      CHECK(std::abs(lhs - gram.real()) < 1e-12 * std::max(1.0, lhs));
      CHECK(std::abs(gram.imag()) < 1e-12);
    }
  }
}

TEST_CASE("dual l1 norm") {
  // Central polynomials: sum (n + 1) |c_n|.
  CentralPoly f(kHalf);
  f.set(0, Complex(1.0, -1.0));
  f.set(3, Complex(0.0, 2.0));
  const double expect = 1 * std::abs(Complex(1.0, -1.0)) + 4 * 2.0;
  CHECK(l1_dual_norm(to_fourier(f)) == doctest::Approx(expect).epsilon(1e-12));

  CHECK(l1_dual_norm(FourierElement(kHalf)) == 0.0);

  // Hand evaluation: xhat = 0.2 e_11, Q = diag(2, 0.5), trace norm 0.4, d = 2.5.
  std::map<IrrepLabel, CMat> X;
  X[IrrepLabel::single(1)] = unit_matrix(2, 0, 0);
  CHECK(l1_dual_norm(from_coefficients(kHalf, X)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convolution order and supports") {
  const IrrepLabel one = IrrepLabel::single(1);

  FourierElement x(kHalf);
  RngStream rng(3);
  x.set_block(one, rng.gaussian_cmat(2, 2));

  // Identity blocks act as the convolution unit.
  FourierElement delta(kHalf);
  delta.set_block(one, CMat::Identity(2, 2));
  CHECK(approx_equal(convolve(x, delta), x, 1e-14));

  // Ordering: (phi * psi)^ = psihat phihat.
  FourierElement phi(kHalf), psi(kHalf);
  phi.set_block(one, unit_matrix(2, 0, 1));
  psi.set_block(one, unit_matrix(2, 1, 0));
  const CMat got = convolve(phi, psi).block_or_zero(one);
  CHECK((got - unit_matrix(2, 1, 1)).cwiseAbs().maxCoeff() < 1e-15);

  // Disjoint supports vanish.
  FourierElement other(kHalf);
  other.set_block(IrrepLabel::single(2), CMat::Identity(3, 3));
  CHECK(convolve(x, other).trimmed(0.0).empty());

  CHECK_THROWS(convolve(x, FourierElement(QuantumGroupModel::single(0.9))));
}

TEST_CASE("multiplier actions") {
  const IrrepLabel one = IrrepLabel::single(1);
  RngStream rng(5);
  FourierElement x(kHalf);
  x.set_block(one, rng.gaussian_cmat(2, 2));

  MultiplierSymbol ident;
  ident.set_block(one, CMat::Identity(2, 2));
  CHECK(approx_equal(apply_multiplier(Side::left, ident, x), x, 1e-14));
  CHECK(approx_equal(apply_multiplier(Side::right, ident, x), x, 1e-14));

  MultiplierSymbol scalar;
  scalar.set_block(one, Complex(2.0, 1.0) * CMat::Identity(2, 2));
  const FourierElement scaled = apply_multiplier(Side::right, scalar, x);
  CHECK((scaled.block_or_zero(one) - Complex(2.0, 1.0) * x.block_or_zero(one))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // Hand 2x2 oracle: xhat = e_21, a = e_12 at q = 0.5:
  // e_21 diag(2, .5) e_12 diag(.5, 2) = 4 e_22.
  FourierElement y(kHalf);
  y.set_block(one, unit_matrix(2, 1, 0));
  MultiplierSymbol a;
  a.set_block(one, unit_matrix(2, 0, 1));
  const CMat res = apply_multiplier(Side::left, a, y).block_or_zero(one);
  CHECK((res - 4.0 * unit_matrix(2, 1, 1)).cwiseAbs().maxCoeff() < 1e-14);

  // Zero extension annihilates off-support blocks; identity extension keeps them.
  FourierElement two(kHalf);
  two.set_block(IrrepLabel::single(2), CMat::Identity(3, 3));
  CHECK(apply_multiplier(Side::right, a, two).trimmed(0.0).empty());
  MultiplierSymbol a_id(MultiplierSymbol::Extend::identity);
  a_id.set_block(one, unit_matrix(2, 0, 1));
  CHECK(approx_equal(apply_multiplier(Side::right, a_id, two), two, 1e-14));
}

TEST_CASE("multiplier linearity and composition") {
  const IrrepLabel one = IrrepLabel::single(1);
  const IrrepLabel two = IrrepLabel::single(2);
  RngStream rng(17);
  for (int t = 0; t < 20; ++t) {
    FourierElement x(kHalf);
    x.set_block(one, rng.gaussian_cmat(2, 2));
    x.set_block(two, rng.gaussian_cmat(3, 3));
    MultiplierSymbol a, b, ab, apb;
    for (const auto& pi : {one, two}) {
      const int d = static_cast<int>(classical_dim(pi));
      const CMat ma = rng.gaussian_cmat(d, d);
      const CMat mb = rng.gaussian_cmat(d, d);
      a.set_block(pi, ma);
      b.set_block(pi, mb);
      ab.set_block(pi, ma * mb);
      apb.set_block(pi, ma + mb);
    }
    // Composition of right multipliers multiplies symbols.
    const FourierElement lhs =
        apply_multiplier(Side::right, a, apply_multiplier(Side::right, b, x));
    const FourierElement rhs = apply_multiplier(Side::right, ab, x);
    CHECK(approx_equal(lhs, rhs, 1e-10));
    // Linearity in the symbol.
    FourierElement sum(kHalf);
    for (const auto& pi : {one, two})
      sum.set_block(pi, apply_multiplier(Side::right, a, x).block_or_zero(pi) +
                            apply_multiplier(Side::right, b, x).block_or_zero(pi));
    CHECK(approx_equal(apply_multiplier(Side::right, apb, x), sum, 1e-10));
  }
}

TEST_CASE("modular transform basics") {
  const IrrepLabel one = IrrepLabel::single(1);
  RngStream rng(23);
  FourierElement x(kHalf);
  x.set_block(one, rng.gaussian_cmat(2, 2));

  CHECK(approx_equal(modular_transform(Complex(0.0, 0.0), x), x, 1e-14));

  // z = -i/2 multiplies by Q^(1/2) on both sides.
  const FourierElement half = modular_transform(Complex(0.0, -0.5), x);
  const RVec q = q_matrix(kHalf, one);
  CMat expect = x.block_or_zero(one);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) expect(r, c) *= std::sqrt(q[r]) * std::sqrt(q[c]);
  CHECK((half.block_or_zero(one) - expect).cwiseAbs().maxCoeff() < 1e-13);

  // Real t preserves the L2 norm.
  for (double t : {0.3, -1.7, 4.0})
    CHECK(l2_norm(modular_transform(Complex(t, 0.0), x)) ==
          doctest::Approx(l2_norm(x)).epsilon(1e-12));
}

TEST_CASE("modular conjugation identity for multipliers") {
  RngStream rng(31);
  const std::vector<int> levels{1, 2, 3};
  for (int t = 0; t < 60; ++t) {
    const FourierElement x = random_element(kHalf, levels, rng);
    const double s = rng.uniform(-3.0, 3.0);
    MultiplierSymbol a, a_left_tw, a_right_tw;
    for (int n : levels) {
      const IrrepLabel pi = IrrepLabel::single(n);
      const CMat sym = rng.gaussian_cmat(n + 1, n + 1);
      a.set_block(pi, sym);
      const RVec q = q_matrix(kHalf, pi);
      CMat lt = sym, rt = sym;
      for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n; ++c) {
          const Complex qrat = std::exp(Complex(0.0, -s) * std::log(q[r] / q[c]));
          lt(r, c) = sym(r, c) * qrat;             // Q^{-it} a Q^{it}
          rt(r, c) = sym(r, c) * std::conj(qrat);  // Q^{it} a Q^{-it}
        }
      a_left_tw.set_block(pi, lt);
      a_right_tw.set_block(pi, rt);
    }
    // sigma_t . m_a^L . sigma_{-t} = m^L with twisted symbol.
    const FourierElement lhs = modular_transform(
        Complex(s, 0.0),
        apply_multiplier(Side::left, a, modular_transform(Complex(-s, 0.0), x)));
    CHECK(approx_equal(lhs, apply_multiplier(Side::left, a_left_tw, x), 1e-12));

    const FourierElement rhs = modular_transform(
        Complex(s, 0.0),
        apply_multiplier(Side::right, a, modular_transform(Complex(-s, 0.0), x)));
    CHECK(approx_equal(rhs, apply_multiplier(Side::right, a_right_tw, x), 1e-12));
  }
}

TEST_CASE("l1 dominates the transform sup and the central sup norm") {
  RngStream rng(41);
  for (int t = 0; t < 30; ++t) {
    const FourierElement x = random_element(kHalf, {0, 1, 2, 3}, rng);
    CHECK(sup_block_norm(x) <= l1_dual_norm(x) + 1e-10);
  }
  for (int t = 0; t < 30; ++t) {
    CentralPoly f(kHalf);
    for (int n = 0; n <= 4; ++n) f.set(n, rng.cnormal());
    const double l1 = l1_dual_norm(to_fourier(f));
    CHECK(central_sup_norm(f, 512).value <= l1 + 1e-9);
  }
}

TEST_CASE("multiplier L2 norm: analytic and sampled") {
  const IrrepLabel one = IrrepLabel::single(1);
  MultiplierSymbol ident;
  ident.set_block(one, CMat::Identity(2, 2));
  CHECK(l2_multiplier_norm(ident) == doctest::Approx(1.0));

  MultiplierSymbol diag;
  CMat d31 = CMat::Zero(2, 2);
  d31(0, 0) = 3.0;
  d31(1, 1) = 1.0;
  diag.set_block(one, d31);
  CHECK(l2_multiplier_norm(diag) == doctest::Approx(3.0));

  RngStream rng(47);
  for (int t = 0; t < 10; ++t) {
    MultiplierSymbol a;
    std::vector<IrrepLabel> support{IrrepLabel::single(1), IrrepLabel::single(2)};
    double expect = 0.0;
    for (const auto& pi : support) {
      const int d = static_cast<int>(classical_dim(pi));
      const CMat sym = rng.gaussian_cmat(d, d);
      expect = std::max(expect, operator_norm(sym));
      a.set_block(pi, sym);
    }
    CHECK(l2_multiplier_norm(a) == doctest::Approx(expect).epsilon(1e-12));
    const double sampled = l2_multiplier_norm_sampled(a, kHalf, support, 25, 1000 + t, 60);
    CHECK(sampled <= expect * (1.0 + 1e-9));
    CHECK(sampled >= expect * (1.0 - 1e-6));
    // Pure sampling stays below the analytic value.
    const double rough = l2_multiplier_norm_sampled(a, kHalf, support, 1000, 2000 + t, 0);
    CHECK(rough <= expect * (1.0 + 1e-9));
  }
}

TEST_CASE("JSON round trip") {
  RngStream rng(53);
  const FourierElement x = random_element(kHalf, {0, 2}, rng);
  const FourierElement back = fourier_from_json(to_json(x));
  CHECK(approx_equal(x, back, 1e-15));
  CHECK(back.model() == kHalf);
}
