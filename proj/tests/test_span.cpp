#include <gtest/gtest.h>

#include "qgl/algebra.hpp"
#include "qgl/error.hpp"
#include "qgl/span.hpp"

namespace qgl {
namespace {

TEST(SpanEquals, DiagonalC2) {
  BlockAlgebra c2({1, 1});
  auto d1 = Element::basis(c2, 0), d2 = Element::basis(c2, 1);
  auto cmp = span_equals({Element::unit(c2), d1}, {d1, d2});
  EXPECT_EQ(cmp.relation, SpanRelation::Equal);
  EXPECT_EQ(cmp.dim_first, 2);
  EXPECT_EQ(cmp.dim_second, 2);
}

TEST(SpanEquals, Incomparable) {
  BlockAlgebra m2({2});
  auto cmp = span_equals({Element::matrix_unit(m2, 0, 0, 0)}, {Element::matrix_unit(m2, 0, 0, 1)});
  EXPECT_EQ(cmp.relation, SpanRelation::Incomparable);
  EXPECT_EQ(cmp.dim_sum, 2);
}

TEST(SpanEquals, ContainmentAndSymmetry) {
  BlockAlgebra m2({2});
  std::vector<Element> small{Element::matrix_unit(m2, 0, 0, 0)};
  std::vector<Element> big{Element::matrix_unit(m2, 0, 0, 0), Element::matrix_unit(m2, 0, 1, 1)};
  EXPECT_EQ(span_equals(small, big).relation, SpanRelation::FirstInSecond);
  EXPECT_EQ(span_equals(big, small).relation, SpanRelation::SecondInFirst);
  EXPECT_EQ(span_equals(big, big).relation, SpanRelation::Equal);
}

TEST(SpanEquals, MixedAlgebrasThrow) {
  BlockAlgebra a({2}), b({1, 1, 1, 1});
  EXPECT_THROW(span_equals({Element::unit(a)}, {Element::unit(b)}), Error);
}

TEST(SpanEquals, ComultipliedProductsMatchIdempotentIdeal) {
  // M_2 with Delta(e_ij) = e_ij (x) e_ij and E = sum e_ii (x) e_ii.
  BlockAlgebra m2({2});
  auto aa = tensor_algebra(m2, m2);
  std::vector<Element> s1, s2;
  Element E = Element::zero(aa);
  for (int i = 0; i < 2; ++i) {
    auto eii = Element::matrix_unit(m2, 0, i, i);
    E += kron(eii, eii, aa);
  }
  for (Index p = 0; p < m2.total_dim(); ++p) {
    auto ep = Element::basis(m2, p);
    auto dp = kron(ep, ep, aa);
    for (Index q = 0; q < aa.total_dim(); ++q) {
      auto z = Element::basis(aa, q);
      s1.push_back(dp * z);
    }
  }
  for (Index q = 0; q < aa.total_dim(); ++q) s2.push_back(E * Element::basis(aa, q));
  auto cmp = span_equals(s1, s2);
  EXPECT_EQ(cmp.relation, SpanRelation::Equal);
  EXPECT_EQ(cmp.dim_first, 8);
}

TEST(SpanAccumulator, AgreesWithDirectSpan) {
  std::mt19937_64 rng(2);
  BlockAlgebra a({2, 2});
  std::vector<Element> els;
  SpanAccumulator acc(a.total_dim());
  auto base1 = random_element(a, rng), base2 = random_element(a, rng);
  for (int t = 0; t < 40; ++t) {
    std::normal_distribution<double> n;
    auto x = cd(n(rng), n(rng)) * base1 + cd(n(rng), n(rng)) * base2;
    els.push_back(x);
    acc.add(x.coords());
  }
  EXPECT_EQ(acc.span().dim(), 2);
  EXPECT_EQ(element_span(els).dim(), 2);
}

TEST(IdealSpan, RightIdealOfProjection) {
  BlockAlgebra m3({3});
  auto p = Element::matrix_unit(m3, 0, 0, 0) + Element::matrix_unit(m3, 0, 1, 1);
  auto ideal = right_ideal_span(m3, {p});
  EXPECT_EQ(ideal.dim(), 6);
  EXPECT_LT(distance(ideal_projection(m3, ideal), p), 1e-12);
  auto left = left_ideal_span(m3, {Element::matrix_unit(m3, 0, 0, 2)});
  EXPECT_EQ(left.dim(), 3);
}

TEST(LegSpans, ElementaryTensors) {
  BlockAlgebra m2({2});
  auto aa = tensor_algebra(m2, m2);
  auto x = kron(Element::matrix_unit(m2, 0, 0, 1), Element::unit(m2), aa);
  auto y = kron(Element::unit(m2), Element::matrix_unit(m2, 0, 1, 1), aa);
  EXPECT_EQ(left_leg_span({x, y}).dim(), 2);
  EXPECT_EQ(right_leg_span({x, y}).dim(), 2);
  EXPECT_EQ(left_leg_span({x}).dim(), 1);
}

}  // namespace
}  // namespace qgl
