#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lacuna/rep.hpp"
#include "lacuna/rng.hpp"

using namespace lacuna;

TEST_CASE("q_matrix diagonals for a single factor") {
  const QuantumGroupModel m = QuantumGroupModel::single(0.5);
  const RVec q0 = q_matrix(m, IrrepLabel::single(0));
  REQUIRE(q0.size() == 1);
  CHECK(q0[0] == doctest::Approx(1.0));

  const RVec q1 = q_matrix(m, IrrepLabel::single(1));
  REQUIRE(q1.size() == 2);
  CHECK(q1[0] == doctest::Approx(2.0));
  CHECK(q1[1] == doctest::Approx(0.5));

  const RVec q2 = q_matrix(m, IrrepLabel::single(2));
  REQUIRE(q2.size() == 3);
  CHECK(q2[0] == doctest::Approx(4.0));
  CHECK(q2[1] == doctest::Approx(1.0));
  CHECK(q2[2] == doctest::Approx(0.25));
  for (int i = 0; i < q2.size(); ++i) CHECK(q2[i] > 0.0);
}

TEST_CASE("quantum dimension") {
  CHECK(quantum_dim(QuantumGroupModel::single(1.0), IrrepLabel::single(1)) ==
        doctest::Approx(2.0));
  CHECK(quantum_dim(QuantumGroupModel::single(0.5), IrrepLabel::single(1)) ==
        doctest::Approx(2.5));
  CHECK(quantum_dim(QuantumGroupModel::single(0.5), IrrepLabel::single(2)) ==
        doctest::Approx(5.25));
}

TEST_CASE("classical dimension") {
  CHECK(classical_dim(IrrepLabel::single(0)) == 1);
  CHECK(classical_dim(IrrepLabel::single(3)) == 4);
  CHECK(classical_dim(IrrepLabel::product({{0, 1}, {1, 2}})) == 6);
}

TEST_CASE("fusion ranges") {
  const auto f11 = fuse(IrrepLabel::single(1), IrrepLabel::single(1));
  REQUIRE(f11.size() == 2);
  CHECK(f11[0] == IrrepLabel::single(0));
  CHECK(f11[1] == IrrepLabel::single(2));

  // Dimension-count oracle for (1, 1): 2 * 2 = 1 + 3.
  long total = 0;
  for (const auto& l : f11) total += classical_dim(l);
  CHECK(total == 4);

  for (int n = 0; n <= 5; ++n) {
    const auto fn = fuse(IrrepLabel::single(0), IrrepLabel::single(n));
    REQUIRE(fn.size() == 1);
    CHECK(fn[0] == IrrepLabel::single(n));
  }

  const auto f23 = fuse(IrrepLabel::single(2), IrrepLabel::single(3));
  REQUIRE(f23.size() == 3);
  CHECK(f23[0] == IrrepLabel::single(1));
  CHECK(f23[1] == IrrepLabel::single(3));
  CHECK(f23[2] == IrrepLabel::single(5));
  // Dimension oracle: 3 * 4 = 2 + 4 + 6.
  long total23 = 0;
  for (const auto& l : f23) total23 += classical_dim(l);
  CHECK(total23 == 12);
}

TEST_CASE("dimension conservation under fusion, labels <= 12") {
  const QuantumGroupModel m = QuantumGroupModel::single(0.7);
  for (int a = 0; a <= 12; ++a) {
    for (int b = 0; b <= 12; ++b) {
      const IrrepLabel la = IrrepLabel::single(a);
      const IrrepLabel lb = IrrepLabel::single(b);
      long cls = 0;
      double qd = 0.0;
      for (const auto& l : fuse(la, lb)) {
        cls += classical_dim(l);
        qd += quantum_dim(m, l);
      }
      CHECK(cls == classical_dim(la) * classical_dim(lb));
      const double expect = quantum_dim(m, la) * quantum_dim(m, lb);
      CHECK(std::abs(qd - expect) <= 1e-10 * expect);
    }
  }
}

TEST_CASE("dimension conservation on a two-factor model") {
  const QuantumGroupModel m({0.5, 0.9});
  const IrrepLabel a = IrrepLabel::product({{0, 2}, {1, 1}});
  const IrrepLabel b = IrrepLabel::product({{0, 1}, {1, 3}});
  long cls = 0;
  double qd = 0.0;
  for (const auto& l : fuse(a, b)) {
    cls += classical_dim(l);
    qd += quantum_dim(m, l);
  }
  CHECK(cls == classical_dim(a) * classical_dim(b));
  const double expect = quantum_dim(m, a) * quantum_dim(m, b);
  CHECK(std::abs(qd - expect) <= 1e-10 * expect);
}

TEST_CASE("Tr(Q) = Tr(Q^-1) and the Kac case") {
  const QuantumGroupModel m = QuantumGroupModel::single(0.37);
  for (int n = 0; n <= 9; ++n) {
    const RVec q = q_matrix(m, IrrepLabel::single(n));
    double tr = 0.0, tr_inv = 0.0;
    for (int i = 0; i < q.size(); ++i) {
      tr += q[i];
      tr_inv += 1.0 / q[i];
    }
    CHECK(tr == doctest::Approx(tr_inv).epsilon(1e-12));
  }

  const QuantumGroupModel kac = QuantumGroupModel::single(1.0);
  const RVec q = q_matrix(kac, IrrepLabel::single(4));
  for (int i = 0; i < q.size(); ++i) CHECK(q[i] == 1.0);
}

TEST_CASE("fusion is commutative and unital") {
  RngStream rng(7);
  for (int t = 0; t < 50; ++t) {
    const IrrepLabel a = IrrepLabel::product({{0, (int)rng.uniform_index(6)},
                                              {1, (int)rng.uniform_index(6)}});
    const IrrepLabel b = IrrepLabel::product({{0, (int)rng.uniform_index(6)},
                                              {1, (int)rng.uniform_index(6)}});
    CHECK(fuse(a, b) == fuse(b, a));
    const auto unit = fuse(a, IrrepLabel());
    REQUIRE(unit.size() == 1);
    CHECK(unit[0] == a);
  }
}

TEST_CASE("label text form round-trips") {
  CHECK(IrrepLabel::single(5).str() == "5");
  CHECK(IrrepLabel::parse("5") == IrrepLabel::single(5));
  const IrrepLabel two = IrrepLabel::product({{0, 1}, {2, 3}});
  CHECK(two.str() == "0:1,2:3");
  CHECK(IrrepLabel::parse("0:1,2:3") == two);
  CHECK(IrrepLabel::parse("0").trivial());
  // A pure component form in a non-zero slot.
  const IrrepLabel shifted = IrrepLabel::parse("1:4");
  CHECK(shifted.level(1) == 4);
  CHECK(shifted.level(0) == 0);
  CHECK_THROWS(IrrepLabel::parse("x"));
  CHECK_THROWS(IrrepLabel::parse("0:1,0:2"));
}

TEST_CASE("model validation") {
  CHECK_THROWS(QuantumGroupModel({}));
  CHECK_THROWS(QuantumGroupModel({0.0}));
  CHECK_THROWS(QuantumGroupModel({1.5}));
  CHECK_THROWS(QuantumGroupModel({0.5, -0.1}));
  const QuantumGroupModel m({0.5, 1.0});
  CHECK_FALSE(m.kac());
  CHECK(QuantumGroupModel({1.0, 1.0}).kac());
  // Labels must reference existing components.
  CHECK_THROWS(q_matrix(m, IrrepLabel::product({{2, 1}})));
}
