#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qgl/algebra.hpp"
#include "qgl/error.hpp"
#include "qgl/weights.hpp"

namespace qgl {
namespace {

const BlockAlgebra M2({2});
const cd I(0.0, 1.0);

Weight diag21() {
  return Weight(M2, 2.0 * Element::matrix_unit(M2, 0, 0, 0) + Element::matrix_unit(M2, 0, 1, 1));
}

TEST(Weight, RejectsNonPositiveDensity) {
  EXPECT_THROW(Weight(M2, Element::matrix_unit(M2, 0, 0, 0)), Error);
  EXPECT_THROW(Weight(M2, Element::matrix_unit(M2, 0, 0, 1) + Element::unit(M2)), Error);
}

TEST(Modular, TracialIsTrivial) {
  std::mt19937_64 rng(1);
  BlockAlgebra a({1, 3});
  Weight w = Weight::trace(a, 2.5);
  auto x = random_element(a, rng);
  for (cd z : {cd(1.0), cd(0.0, 0.5), cd(-0.3, 2.0)}) {
    EXPECT_LT(distance(w.modular(z, x), x), 1e-12);
  }
}

TEST(Modular, AnalyticGeneratorOnMatrixUnit) {
  auto s = diag21().modular(I / 2.0, Element::matrix_unit(M2, 0, 0, 1));
  EXPECT_LT(distance(s, (1.0 / std::sqrt(2.0)) * Element::matrix_unit(M2, 0, 0, 1)), 1e-14);
}

TEST(Modular, RealParametersActUnitarily) {
  std::mt19937_64 rng(4);
  BlockAlgebra a({2, 3});
  Weight w(a, random_positive(a, rng));
  for (double t : {1.0, -0.3, 2.0}) {
    auto x = random_element(a, rng);
    auto s = w.modular(t, x);
    EXPECT_NEAR(s.operator_norm(), x.operator_norm(), 1e-12 * x.operator_norm());
    EXPECT_LT(distance(w.modular(t, x.adjoint()), s.adjoint()), 1e-12);
  }
}

TEST(Modular, GroupLaw) {
  std::mt19937_64 rng(8);
  BlockAlgebra a({1, 2, 2});
  Weight w(a, random_positive(a, rng));
  auto x = random_element(a, rng);
  cd z(0.3, 0.4), v(-1.0, 0.25);
  EXPECT_LT(distance(w.modular(z, w.modular(v, x)), w.modular(z + v, x)), 1e-10);
}

TEST(Kms, PassesOnTraceAndDiag21) {
  CheckOptions o;
  o.tol = 1e-12;
  EXPECT_TRUE(check_kms(Weight::trace(BlockAlgebra({3})), o, "kms").verdict());
  EXPECT_TRUE(check_kms(diag21(), o, "kms").verdict());
  EXPECT_TRUE(check_modular_group(diag21(), CheckOptions{}, "modular").verdict());
}

TEST(Kms, WrongDensityBreaksIdentity) {
  // sigma taken from rho' = diag(3,1) while psi has rho = diag(2,1).
  Weight psi = diag21();
  Weight wrong(M2, 3.0 * Element::matrix_unit(M2, 0, 0, 0) + Element::matrix_unit(M2, 0, 1, 1));
  auto a = Element::matrix_unit(M2, 0, 0, 1);
  auto s = wrong.modular(I / 2.0, a);
  double residual = std::abs(psi(a.adjoint() * a) - psi(s * s.adjoint()));
  EXPECT_GE(residual, 0.1);
  auto good = psi.modular(I / 2.0, a);
  EXPECT_LT(std::abs(psi(a.adjoint() * a) - psi(good * good.adjoint())), 1e-14);
}

TEST(Gns, TraceGivesIdentityNablaAndAdjointJ) {
  std::mt19937_64 rng(6);
  BlockAlgebra m3({3});
  GNSData g = gns(Weight::trace(m3));
  EXPECT_EQ(g.hilbert_dim(), 9);
  EXPECT_LT((g.nabla() - Matrix::Identity(9, 9)).norm(), 1e-12);
  auto x = random_element(m3, rng);
  EXPECT_LT((g.J(g.lambda(x)) - x.adjoint().coords()).norm(), 1e-12);
}

TEST(Gns, Diag21NablaConjugatesByDensity) {
  GNSData g = gns(diag21());
  for (Index p = 0; p < 4; ++p) {
    auto e = Element::basis(M2, p);
    const Element& rho = g.weight().density();
    auto expected = rho * e * g.weight().density_power(-1.0);
    EXPECT_LT((g.nabla() * g.lambda(e) - expected.coords()).norm(), 1e-12);
  }
  CheckOptions o;
  o.tol = 1e-10;
  EXPECT_TRUE(check_gns(g, o, "gns").verdict());
}

TEST(Gns, InnerProductMatchesWeight) {
  std::mt19937_64 rng(12);
  BlockAlgebra a({1, 2});
  Weight w(a, random_positive(a, rng));
  GNSData g = gns(w);
  for (Index p = 0; p < a.total_dim(); ++p) {
    for (Index q = 0; q < a.total_dim(); ++q) {
      auto ea = Element::basis(a, p), eb = Element::basis(a, q);
      EXPECT_LT(std::abs(g.inner(g.lambda(ea), g.lambda(eb)) - w(eb.adjoint() * ea)), 1e-12);
    }
  }
}

TEST(Slice, TraceOnRightLeg) {
  std::mt19937_64 rng(9);
  BlockAlgebra b({3});
  auto a = random_element(M2, rng);
  auto y = random_element(b, rng);
  cd tr = y.block_matrix(0).trace();
  auto out = slice(Side::Right, Weight::trace(b), kron(a, y));
  EXPECT_LT(distance(out, tr * a), 1e-12);
}

TEST(Slice, Fubini) {
  std::mt19937_64 rng(10);
  BlockAlgebra a1({1, 2}), a2({2});
  Weight psi(a1, random_positive(a1, rng));
  Functional omega(a2, random_element(a2, rng));
  auto t = tensor_algebra(a1, a2);
  for (int k = 0; k < 50; ++k) {
    auto x = random_element(t, rng);
    cd lhs = psi(slice(Side::Right, omega, x));
    cd rhs = omega(slice(Side::Left, psi, x));
    ASSERT_LT(std::abs(lhs - rhs), 1e-10);
  }
}

TEST(Slice, PositiveElementsHavePositiveSlices) {
  std::mt19937_64 rng(13);
  BlockAlgebra a({2, 1});
  Weight psi(a, random_positive(a, rng));
  auto t = tensor_algebra(a, a);
  for (int k = 0; k < 20; ++k) {
    auto x = random_element(t, rng);
    EXPECT_GE(min_eigenvalue(slice(Side::Left, psi, x.adjoint() * x)), -1e-10);
  }
}

TEST(TensorWeight, TraceTensorTrace) {
  auto w = tensor_weight(Weight::trace(M2), Weight::trace(M2));
  EXPECT_EQ(w.algebra().block_dims(), std::vector<int>{4});
  EXPECT_LT(distance(w.density(), Element::unit(w.algebra())), 1e-15);
}

TEST(TensorWeight, ModularGroupFactorizes) {
  std::mt19937_64 rng(14);
  BlockAlgebra b({2});
  auto w = tensor_weight(diag21(), Weight::trace(b));
  auto a = random_element(M2, rng), y = random_element(b, rng);
  auto lhs = w.modular(0.7, kron(a, y, w.algebra()));
  auto rhs = kron(diag21().modular(0.7, a), y, w.algebra());
  EXPECT_LT(distance(lhs, rhs), 1e-12);
  EXPECT_TRUE(check_tensor_weight(diag21(), Weight::trace(b), CheckOptions{}, "tw").verdict());
}

TEST(TensorWeight, SliceThenWeight) {
  std::mt19937_64 rng(15);
  BlockAlgebra b({1, 2});
  Weight psi(M2, random_positive(M2, rng));
  Weight phi(b, random_positive(b, rng));
  auto w = tensor_weight(psi, phi);
  auto x = random_element(w.algebra(), rng);
  EXPECT_LT(std::abs(phi(slice(Side::Left, psi, x)) - w(x)), 1e-10);
}

TEST(FunctionalAbs, PositiveIsUnchanged) {
  Functional omega = Functional::of(diag21());
  EXPECT_LT(distance(functional_abs(omega).rep(), omega.rep()), 1e-12);
  EXPECT_NEAR(omega.norm(), 3.0, 1e-12);
}

TEST(FunctionalAbs, NegativeTraceBecomesTrace) {
  Functional omega(M2, -1.0 * Element::unit(M2));
  EXPECT_LT(distance(functional_abs(omega).rep(), Element::unit(M2)), 1e-12);
}

TEST(FunctionalAbs, OffDiagonalMatrixUnit) {
  // omega(x) = x_21, |omega|(x) = x_11 with the (tau tau^*)^{1/2} convention.
  Functional omega(M2, Element::matrix_unit(M2, 0, 0, 1));
  Functional abs = functional_abs(omega);
  EXPECT_LT(distance(abs.rep(), Element::matrix_unit(M2, 0, 0, 0)), 1e-12);
  EXPECT_NEAR(abs.norm(), omega.norm(), 1e-12);
  std::mt19937_64 rng(16);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto a = random_element(M2, rng);
    double lhs = std::norm(omega(a));
    double rhs = omega.norm() * abs(a.adjoint() * a).real();
    worst = std::max(worst, lhs / rhs);
  }
  EXPECT_LE(worst, 1.0 + 1e-12);
}

TEST(FunctionalAbs, NormsAgreeOnRandomFunctionals) {
  std::mt19937_64 rng(17);
  BlockAlgebra a({1, 2, 3});
  for (int k = 0; k < 10; ++k) {
    Functional omega(a, random_element(a, rng));
    EXPECT_NEAR(functional_abs(omega).norm(), omega.norm(), 1e-9);
    for (int s = 0; s < 10; ++s) {
      EXPECT_GE(omegabar_margin(omega, random_element(a, rng)), -1e-10);
    }
  }
}

TEST(CauchySchwarz, EqualArgumentsAndZero) {
  std::mt19937_64 rng(18);
  auto t = tensor_algebra(M2, M2);
  Weight tr = Weight::trace(M2);
  auto x = random_element(t, rng);
  EXPECT_GE(cauchy_schwarz_margin(tr, x, x), -1e-10);
  EXPECT_NEAR(cauchy_schwarz_margin(tr, Element::zero(t), x), 0.0, 1e-12);
}

TEST(CauchySchwarz, RandomTraceOnM2M2) {
  std::mt19937_64 rng(19);
  auto t = tensor_algebra(M2, M2);
  Weight tr = Weight::trace(M2);
  for (int k = 0; k < 200; ++k) {
    auto x = random_element(t, rng), y = random_element(t, rng);
    ASSERT_GE(cauchy_schwarz_margin(tr, x, y), -1e-10);
    ASSERT_GE(cauchy_schwarz_margin(tr, x, y, Side::Right), -1e-10);
  }
}

}  // namespace
}  // namespace qgl
