#pragma once

// Linear spans of element sets, compared by rank-revealing decompositions.
// Every density statement about finite-dimensional algebras reduces to these.

#include <string>
#include <vector>

#include "qgl/algebra.hpp"

namespace qgl {

inline constexpr double kDefaultRankTol = 1e-9;

/// A subspace of C^n held by an orthonormal basis (one column per direction).
class Subspace {
 public:
  explicit Subspace(Index ambient_dim);

  /// Column span of `columns`. A direction counts when its singular value
  /// exceeds rel_tol times the largest one.
  static Subspace from_columns(const Matrix& columns, double rel_tol = kDefaultRankTol);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const { return basis_ * basis_.adjoint(); }
  /// Euclidean distance from v to the subspace.
  double distance(const Vector& v) const;

 private:
  Index ambient_;
  Matrix basis_;
};

/// Streams columns into a span without materializing them all: keeps a
/// compressed factor K with K K^* equal to the accumulated Gram matrix.
class SpanAccumulator {
 public:
  explicit SpanAccumulator(Index ambient_dim);
  void add(const Vector& v);
  void add_columns(const Matrix& columns);
  Subspace span(double rel_tol = kDefaultRankTol);

 private:
  void compress();
  Index ambient_;
  Matrix factor_;
  Matrix pending_;
  Index pending_cols_ = 0;
};

enum class SpanRelation { Equal, FirstInSecond, SecondInFirst, Incomparable };

std::string to_string(SpanRelation relation);

struct SpanComparison {
  SpanRelation relation = SpanRelation::Incomparable;
  Index dim_first = 0;
  Index dim_second = 0;
  Index dim_sum = 0;
};

SpanComparison compare_subspaces(const Subspace& s1, const Subspace& s2,
                                 double rel_tol = kDefaultRankTol);

/// Relationship between span(S1) and span(S2). Throws Error(InvalidInput)
/// when the elements do not all live in one algebra.
SpanComparison span_equals(const std::vector<Element>& s1, const std::vector<Element>& s2,
                           double rel_tol = kDefaultRankTol);

Subspace element_span(const std::vector<Element>& elements, double rel_tol = kDefaultRankTol);

/// span{ g A : g in generators } (right ideal), recorded blockwise: inside
/// block k it is every matrix whose columns lie in the subspace blocks[k].
/// The left ideal span{ A g } is the same with rows, i.e. ranges of g_k^*.
struct IdealSpan {
  std::vector<Subspace> blocks;
  /// Dimension of the ideal as a subspace of the algebra.
  Index dim() const;
};

IdealSpan right_ideal_span(const BlockAlgebra& algebra, const std::vector<Element>& generators,
                           double rel_tol = kDefaultRankTol);
IdealSpan left_ideal_span(const BlockAlgebra& algebra, const std::vector<Element>& generators,
                          double rel_tol = kDefaultRankTol);

SpanComparison compare_ideals(const IdealSpan& i1, const IdealSpan& i2,
                              double rel_tol = kDefaultRankTol);

/// Orthogonal projection onto the ideal's column spaces as an element.
Element ideal_projection(const BlockAlgebra& algebra, const IdealSpan& ideal);

/// Spans of the legs of tensor elements: { (id (x) w)(x) } lives in the left
/// factor and { (w (x) id)(x) } in the right factor, over all functionals w.
Subspace left_leg_span(const std::vector<Element>& tensors, double rel_tol = kDefaultRankTol);
Subspace right_leg_span(const std::vector<Element>& tensors, double rel_tol = kDefaultRankTol);

}  // namespace qgl
