#pragma once

// Finite-dimensional C*-algebras in Wedderburn form.
//
// An algebra is a direct sum of full matrix blocks M_{d_0} + ... + M_{d_{n-1}}.
// Elements are stored as one flat coordinate vector in the matrix-unit basis:
// blocks in the given order, and inside block k the unit e_{ij} sits at
// offset(k) + i * d_k + j (row-major). Tensor algebras order their blocks
// lexicographically over block pairs and their rows/columns as (r1, r2).

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qgl {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowMajorMatrix =
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BlockView = Eigen::Map<RowMajorMatrix>;
using ConstBlockView = Eigen::Map<const RowMajorMatrix>;
using Index = Eigen::Index;

class BlockAlgebra {
 public:
  /// Throws Error(InvalidInput) on an empty list or a non-positive block size.
  explicit BlockAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const;
  int num_blocks() const;
  int block_dim(int k) const;
  Index offset(int k) const;
  Index total_dim() const;
  Index index(int k, int i, int j) const;

  struct Position {
    int block;
    int row;
    int col;
  };
  Position locate(Index coordinate) const;

  /// All blocks one-dimensional.
  bool is_commutative() const;

  bool is_tensor() const;
  const BlockAlgebra& left_factor() const;
  const BlockAlgebra& right_factor() const;
  /// Coordinate of e_p (x) e_q in this tensor algebra, p and q being
  /// coordinates in the left and right factor.
  Index tensor_index(Index p, Index q) const;

  /// Same block structure (coordinates are interchangeable).
  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b);
  friend bool operator!=(const BlockAlgebra& a, const BlockAlgebra& b) {
    return !(a == b);
  }

  struct Impl;

 private:
  explicit BlockAlgebra(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend BlockAlgebra tensor_algebra(const BlockAlgebra&, const BlockAlgebra&);
};

/// A1 (x) A2 with block dims d_i * e_j over all block pairs, lexicographic.
BlockAlgebra tensor_algebra(const BlockAlgebra& a1, const BlockAlgebra& a2);

class Element {
 public:
  Element(BlockAlgebra algebra, Vector coords);

  static Element zero(const BlockAlgebra& algebra);
  static Element unit(const BlockAlgebra& algebra);
  static Element matrix_unit(const BlockAlgebra& algebra, int k, int i, int j);
  static Element basis(const BlockAlgebra& algebra, Index coordinate);
  static Element from_blocks(const BlockAlgebra& algebra,
                             const std::vector<Matrix>& blocks);

  const BlockAlgebra& algebra() const { return algebra_; }
  const Vector& coords() const { return coords_; }
  ConstBlockView block(int k) const;
  Matrix block_matrix(int k) const;

  Element adjoint() const;
  /// Largest singular value over all blocks.
  double operator_norm() const;
  double frobenius_norm() const { return coords_.norm(); }

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(cd scalar);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(cd s, Element a) { return a *= s; }
  friend Element operator*(Element a, cd s) { return a *= s; }
  friend Element operator*(const Element& a, const Element& b);

 private:
  BlockAlgebra algebra_;
  Vector coords_;
};

/// ||x - y||_F for elements of the same algebra.
double distance(const Element& x, const Element& y);

/// x (x) y in `target`, which must be tensor_algebra(x.algebra(), y.algebra()).
Element kron(const Element& x, const Element& y, const BlockAlgebra& target);
Element kron(const Element& x, const Element& y);

/// The flip A1 (x) A2 -> A2 (x) A1. Throws Error(InvalidInput) when x does not
/// live in a tensor algebra.
Element flip(const Element& x);
Element flip(const Element& x, const BlockAlgebra& target);

/// Coefficient matrix X with x = sum X(p, q) e_p (x) e_q.
Matrix tensor_coefficients(const Element& x);
Element from_tensor_coefficients(const Matrix& coefficients,
                                 const BlockAlgebra& target);

/// (T1 (x) T2)(x) for linear maps given as coordinate matrices. A null pointer
/// stands for the identity on that leg.
Element apply_tensor_maps(const Element& x, const Matrix* left,
                          const Matrix* right, const BlockAlgebra& target);

/// Reinterprets x in an algebra with identical block structure, e.g.
/// A (x) (A (x) A) as (A (x) A) (x) A.
Element reassociate(const Element& x, const BlockAlgebra& target);

/// Entries with independent standard complex Gaussian real and imaginary parts.
Element random_element(const BlockAlgebra& algebra, std::mt19937_64& rng);
/// Hermitian positive definite element with block spectra in [lo, hi].
Element random_positive(const BlockAlgebra& algebra, std::mt19937_64& rng,
                        double lo = 0.5, double hi = 2.0);

}  // namespace qgl
