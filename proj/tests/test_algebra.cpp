#include <gtest/gtest.h>

#include <random>

#include "qgl/algebra.hpp"
#include "qgl/error.hpp"
#include "qgl/linear_map.hpp"

namespace qgl {
namespace {

const BlockAlgebra M2({2});

TEST(BlockAlgebra, RejectsDegenerateDims) {
  EXPECT_THROW(BlockAlgebra(std::vector<int>{}), Error);
  EXPECT_THROW(BlockAlgebra({2, 0}), Error);
}

TEST(BlockAlgebra, OffsetsAndLocate) {
  BlockAlgebra a({1, 2, 3});
  EXPECT_EQ(a.total_dim(), 14);
  EXPECT_EQ(a.index(2, 1, 2), 1 + 4 + 5);
  auto pos = a.locate(10);
  EXPECT_EQ(pos.block, 2);
  EXPECT_EQ(pos.row, 1);
  EXPECT_EQ(pos.col, 2);
}

TEST(TensorAlgebra, BlockDims) {
  EXPECT_EQ(tensor_algebra(M2, BlockAlgebra({3})).block_dims(), std::vector<int>{6});
  BlockAlgebra c2({1, 1});
  auto t = tensor_algebra(c2, c2);
  EXPECT_EQ(t.block_dims(), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(t.total_dim(), 4);
  auto mixed = tensor_algebra(BlockAlgebra({1, 2}), BlockAlgebra({2, 3}));
  EXPECT_EQ(mixed.block_dims(), (std::vector<int>{2, 3, 4, 6}));
}

TEST(TensorAlgebra, KronOfMatrixUnitsMatchesExplicitKronecker) {
  auto e12 = Element::matrix_unit(M2, 0, 0, 1);
  auto e21 = Element::matrix_unit(M2, 0, 1, 0);
  auto x = kron(e12, e21);
  // rows (r1, r2) = (0, 1), cols (c1, c2) = (1, 0) in the 4x4 block
  Matrix expected = Matrix::Zero(4, 4);
  expected(0 * 2 + 1, 1 * 2 + 0) = 1.0;
  EXPECT_LT((x.block_matrix(0) - expected).norm(), 1e-15);
  Matrix a = e12.block_matrix(0), b = e21.block_matrix(0);
  Matrix k(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  EXPECT_LT((x.block_matrix(0) - k).norm(), 1e-15);
}

TEST(TensorAlgebra, KronIsBilinearAndMultiplicative) {
  std::mt19937_64 rng(3);
  BlockAlgebra a({1, 2});
  BlockAlgebra b({2});
  auto x1 = random_element(a, rng), x2 = random_element(a, rng);
  auto y1 = random_element(b, rng), y2 = random_element(b, rng);
  cd s(0.5, -2.0);
  EXPECT_LT(distance(kron(x1 + s * x2, y1), kron(x1, y1) + s * kron(x2, y1)), 1e-12);
  EXPECT_LT(distance(kron(x1, y1 + y2), kron(x1, y1) + kron(x1, y2)), 1e-12);
  EXPECT_LT(distance(kron(x1, y1) * kron(x2, y2), kron(x1 * x2, y1 * y2)), 1e-11);
  EXPECT_LT(distance(kron(x1, y1).adjoint(), kron(x1.adjoint(), y1.adjoint())), 1e-12);
}

TEST(Flip, SwapsFactorsAndIsInvolutive) {
  std::mt19937_64 rng(5);
  BlockAlgebra a({1, 2});
  BlockAlgebra b({3});
  auto x = random_element(a, rng);
  auto y = random_element(b, rng);
  EXPECT_LT(distance(flip(kron(x, y)), kron(y, x)), 1e-12);
  EXPECT_LT(distance(flip(kron(x, Element::unit(a))), kron(Element::unit(a), x)), 1e-12);
  auto aa = tensor_algebra(a, a);
  for (int t = 0; t < 100; ++t) {
    auto z = random_element(aa, rng);
    ASSERT_LT(distance(flip(flip(z)), z), 1e-12);
  }
}

TEST(Flip, RejectsNonTensor) {
  EXPECT_THROW(flip(Element::unit(M2)), Error);
}

TEST(Element, NormIdentities) {
  std::mt19937_64 rng(7);
  BlockAlgebra a({1, 2, 3});
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(a, rng);
    auto y = random_element(a, rng);
    double nx = x.operator_norm();
    EXPECT_LE((x * y).operator_norm(), nx * y.operator_norm() * (1 + 1e-12));
    EXPECT_NEAR((x.adjoint() * x).operator_norm(), nx * nx, 1e-12 * nx * nx);
    EXPECT_LT(distance((x * y).adjoint(), y.adjoint() * x.adjoint()), 1e-12 * nx * y.operator_norm());
  }
}

TEST(Element, UnitIsSelfAdjointProjection) {
  BlockAlgebra a({2, 1});
  auto one = Element::unit(a);
  EXPECT_EQ(distance(one * one, one), 0.0);
  EXPECT_EQ(distance(one.adjoint(), one), 0.0);
}

TEST(Reassociate, MatchesBothBracketings) {
  std::mt19937_64 rng(11);
  BlockAlgebra a({1, 2});
  auto x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
  auto aa = tensor_algebra(a, a);
  auto left = tensor_algebra(aa, a);
  auto right = tensor_algebra(a, aa);
  auto r = kron(x, kron(y, z, aa), right);
  auto l = kron(kron(x, y, aa), z, left);
  EXPECT_LT(distance(reassociate(r, left), l), 1e-12);
}

TEST(StarHomomorphism, TransposeIsAntiMultiplicative) {
  auto transpose = [](const Element& x) {
    return Element::from_blocks(x.algebra(), {x.block_matrix(0).transpose()});
  };
  EXPECT_TRUE(check_star_homomorphism(M2, transpose, true, 1e-12, "R").verdict());
}

TEST(StarHomomorphism, IdentityIsNotAntiMultiplicative) {
  auto report = check_star_homomorphism(LinearMap::identity(M2), true, 1e-9, "R");
  EXPECT_FALSE(report.verdict());
  const Check* c = report.find("R.anti_multiplicative");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->pass);
  EXPECT_GE(c->residual, 1.0 - 1e-12);
}

TEST(StarHomomorphism, EntrywiseConjugationIsNotLinear) {
  auto conj = [](const Element& x) { return Element(x.algebra(), x.coords().conjugate()); };
  auto report = check_star_homomorphism(M2, conj, false, 1e-9, "conj");
  EXPECT_FALSE(report.verdict());
  EXPECT_FALSE(report.find("conj.linear")->pass);
}

TEST(LinearMap, VerifiedRejectsFalseClaims) {
  MapFlags f;
  f.anti_multiplicative = true;
  EXPECT_THROW(LinearMap::verified(M2, M2, Matrix::Identity(4, 4), f, 1e-9), Error);
}

TEST(SubalgebraEmbedding, DiagonalInM2) {
  BlockAlgebra c2({1, 1});
  Matrix iota = Matrix::Zero(4, 2);
  iota(M2.index(0, 0, 0), 0) = 1.0;
  iota(M2.index(0, 1, 1), 1) = 1.0;
  SubalgebraEmbedding e(c2, M2, iota);
  EXPECT_TRUE(e.check(1e-10, "iota").verdict());
  EXPECT_LT(distance(e(Element::unit(c2)), Element::unit(M2)), 1e-15);
}

TEST(SubalgebraEmbedding, NonUnitalFails) {
  BlockAlgebra c({1});
  Matrix iota = Matrix::Zero(4, 1);
  iota(0, 0) = 1.0;
  SubalgebraEmbedding e(c, M2, iota);
  auto r = e.check(1e-10, "iota");
  EXPECT_FALSE(r.find("iota.unital")->pass);
}

}  // namespace
}  // namespace qgl
