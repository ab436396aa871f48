#include "qgl/span.hpp"

#include <algorithm>

#include "qgl/error.hpp"

namespace qgl {

namespace {

/// Orthonormal basis of the column space via SVD.
Matrix range_basis(const Matrix& columns, double rel_tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return Matrix(columns.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix(columns.rows(), 0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Subspace::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace Subspace::from_columns(const Matrix& columns, double rel_tol) {
  Subspace out(columns.rows());
  out.basis_ = range_basis(columns, rel_tol);
  return out;
}

double Subspace::distance(const Vector& v) const {
  if (dim() == 0) return v.norm();
  return (v - basis_ * (basis_.adjoint() * v)).norm();
}

// ---------------------------------------------------------------------------

SpanAccumulator::SpanAccumulator(Index ambient_dim)
    : ambient_(ambient_dim), factor_(ambient_dim, 0), pending_(ambient_dim, ambient_dim) {}

void SpanAccumulator::add(const Vector& v) {
  if (v.size() != ambient_) {
    throw Error(ErrorKind::InvalidInput, "vector does not fit the accumulated span");
  }
  pending_.col(pending_cols_++) = v;
  if (pending_cols_ == pending_.cols()) compress();
}

void SpanAccumulator::add_columns(const Matrix& columns) {
  for (Index j = 0; j < columns.cols(); ++j) add(columns.col(j));
}

void SpanAccumulator::compress() {
  if (pending_cols_ == 0) return;
  Matrix stacked(ambient_, factor_.cols() + pending_cols_);
  stacked << factor_, pending_.leftCols(pending_cols_);
  pending_cols_ = 0;
  if (stacked.cols() <= ambient_) {
    factor_ = std::move(stacked);
    return;
  }
  // K K^* = U S^2 U^*, so U S carries the same Gram matrix in ambient_ columns.
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  factor_ = svd.matrixU() * svd.singularValues().cast<cd>().asDiagonal();
}

Subspace SpanAccumulator::span(double rel_tol) {
  compress();
  return Subspace::from_columns(factor_, rel_tol);
}

// ---------------------------------------------------------------------------

std::string to_string(SpanRelation relation) {
  switch (relation) {
    case SpanRelation::Equal:
      return "equal";
    case SpanRelation::FirstInSecond:
      return "first contained in second";
    case SpanRelation::SecondInFirst:
      return "second contained in first";
    case SpanRelation::Incomparable:
      return "incomparable";
  }
  return "incomparable";
}

namespace {

SpanRelation relation_from_dims(Index d1, Index d2, Index sum) {
  if (d1 == sum && d2 == sum) return SpanRelation::Equal;
  if (d2 == sum) return SpanRelation::FirstInSecond;
  if (d1 == sum) return SpanRelation::SecondInFirst;
  return SpanRelation::Incomparable;
}

}  // namespace

SpanComparison compare_subspaces(const Subspace& s1, const Subspace& s2, double rel_tol) {
  if (s1.ambient_dim() != s2.ambient_dim()) {
    throw Error(ErrorKind::InvalidInput, "comparing subspaces of different spaces");
  }
  Matrix joined(s1.ambient_dim(), s1.dim() + s2.dim());
  joined << s1.basis(), s2.basis();
  const Index sum = range_basis(joined, rel_tol).cols();
  return {relation_from_dims(s1.dim(), s2.dim(), sum), s1.dim(), s2.dim(), sum};
}

Subspace element_span(const std::vector<Element>& elements, double rel_tol) {
  if (elements.empty()) {
    throw Error(ErrorKind::InvalidInput, "span of an empty set needs an algebra");
  }
  const BlockAlgebra& alg = elements.front().algebra();
  Matrix cols(alg.total_dim(), static_cast<Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].algebra() != alg) {
      throw Error(ErrorKind::InvalidInput, "span of elements from different algebras");
    }
    cols.col(static_cast<Index>(i)) = elements[i].coords();
  }
  return Subspace::from_columns(cols, rel_tol);
}

SpanComparison span_equals(const std::vector<Element>& s1, const std::vector<Element>& s2,
                           double rel_tol) {
  if (s1.empty() || s2.empty()) {
    throw Error(ErrorKind::InvalidInput, "span comparison needs non-empty sets");
  }
  if (s1.front().algebra() != s2.front().algebra()) {
    throw Error(ErrorKind::InvalidInput, "span comparison across different algebras");
  }
  return compare_subspaces(element_span(s1, rel_tol), element_span(s2, rel_tol), rel_tol);
}

// ---------------------------------------------------------------------------

Index IdealSpan::dim() const {
  Index total = 0;
  for (const auto& s : blocks) total += s.dim() * s.ambient_dim();
  return total;
}

namespace {

IdealSpan ideal_span(const BlockAlgebra& algebra, const std::vector<Element>& generators,
                     bool right, double rel_tol) {
  IdealSpan out;
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int d = algebra.block_dim(k);
    SpanAccumulator acc(d);
    for (const auto& g : generators) {
      if (g.algebra() != algebra) {
        throw Error(ErrorKind::InvalidInput, "ideal generator from a different algebra");
      }
      if (right) {
        acc.add_columns(g.block(k));
      } else {
        acc.add_columns(g.block(k).adjoint());
      }
    }
    out.blocks.push_back(acc.span(rel_tol));
  }
  return out;
}

}  // namespace

IdealSpan right_ideal_span(const BlockAlgebra& algebra, const std::vector<Element>& generators,
                           double rel_tol) {
  return ideal_span(algebra, generators, true, rel_tol);
}

IdealSpan left_ideal_span(const BlockAlgebra& algebra, const std::vector<Element>& generators,
                          double rel_tol) {
  return ideal_span(algebra, generators, false, rel_tol);
}

SpanComparison compare_ideals(const IdealSpan& i1, const IdealSpan& i2, double rel_tol) {
  if (i1.blocks.size() != i2.blocks.size()) {
    throw Error(ErrorKind::InvalidInput, "comparing ideals of different algebras");
  }
  Index sum = 0;
  for (std::size_t k = 0; k < i1.blocks.size(); ++k) {
    sum += compare_subspaces(i1.blocks[k], i2.blocks[k], rel_tol).dim_sum *
           i1.blocks[k].ambient_dim();
  }
  const Index d1 = i1.dim();
  const Index d2 = i2.dim();
  return {relation_from_dims(d1, d2, sum), d1, d2, sum};
}

Element ideal_projection(const BlockAlgebra& algebra, const IdealSpan& ideal) {
  std::vector<Matrix> blocks;
  blocks.reserve(ideal.blocks.size());
  for (const auto& s : ideal.blocks) blocks.push_back(s.projector());
  return Element::from_blocks(algebra, blocks);
}

Subspace left_leg_span(const std::vector<Element>& tensors, double rel_tol) {
  if (tensors.empty()) throw Error(ErrorKind::InvalidInput, "leg span of an empty set");
  SpanAccumulator acc(tensors.front().algebra().left_factor().total_dim());
  for (const auto& x : tensors) acc.add_columns(tensor_coefficients(x));
  return acc.span(rel_tol);
}

Subspace right_leg_span(const std::vector<Element>& tensors, double rel_tol) {
  if (tensors.empty()) throw Error(ErrorKind::InvalidInput, "leg span of an empty set");
  SpanAccumulator acc(tensors.front().algebra().right_factor().total_dim());
  for (const auto& x : tensors) acc.add_columns(tensor_coefficients(x).transpose());
  return acc.span(rel_tol);
}

}  // namespace qgl
