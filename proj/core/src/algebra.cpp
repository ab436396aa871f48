#include "qgl/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qgl/error.hpp"

namespace qgl {

struct BlockAlgebra::Impl {
  std::vector<int> dims;
  std::vector<Index> offsets;
  Index total = 0;
  bool commutative = true;
  // Tensor structure, empty for plain algebras.
  std::shared_ptr<const BlockAlgebra> left;
  std::shared_ptr<const BlockAlgebra> right;
  std::vector<Index> tensor_table;
};

namespace {

std::shared_ptr<BlockAlgebra::Impl> make_impl(std::vector<int> dims) {
  if (dims.empty()) {
    throw Error(ErrorKind::InvalidInput, "block algebra needs at least one block");
  }
  auto impl = std::make_shared<BlockAlgebra::Impl>();
  impl->offsets.reserve(dims.size());
  for (int d : dims) {
    if (d < 1) {
      throw Error(ErrorKind::InvalidInput,
                  "block dimension must be positive, got " + std::to_string(d));
    }
    impl->offsets.push_back(impl->total);
    impl->total += static_cast<Index>(d) * d;
    if (d != 1) impl->commutative = false;
  }
  impl->dims = std::move(dims);
  return impl;
}

}  // namespace

BlockAlgebra::BlockAlgebra(std::vector<int> block_dims)
    : impl_(make_impl(std::move(block_dims))) {}

BlockAlgebra::BlockAlgebra(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

const std::vector<int>& BlockAlgebra::block_dims() const { return impl_->dims; }
int BlockAlgebra::num_blocks() const { return static_cast<int>(impl_->dims.size()); }
int BlockAlgebra::block_dim(int k) const { return impl_->dims[k]; }
Index BlockAlgebra::offset(int k) const { return impl_->offsets[k]; }
Index BlockAlgebra::total_dim() const { return impl_->total; }

Index BlockAlgebra::index(int k, int i, int j) const {
  return impl_->offsets[k] + static_cast<Index>(i) * impl_->dims[k] + j;
}

BlockAlgebra::Position BlockAlgebra::locate(Index coordinate) const {
  auto it = std::upper_bound(impl_->offsets.begin(), impl_->offsets.end(), coordinate);
  int k = static_cast<int>(it - impl_->offsets.begin()) - 1;
  Index local = coordinate - impl_->offsets[k];
  int d = impl_->dims[k];
  return {k, static_cast<int>(local / d), static_cast<int>(local % d)};
}

bool BlockAlgebra::is_commutative() const { return impl_->commutative; }
bool BlockAlgebra::is_tensor() const { return impl_->left != nullptr; }

const BlockAlgebra& BlockAlgebra::left_factor() const {
  if (!is_tensor()) throw Error(ErrorKind::InvalidInput, "not a tensor algebra");
  return *impl_->left;
}

const BlockAlgebra& BlockAlgebra::right_factor() const {
  if (!is_tensor()) throw Error(ErrorKind::InvalidInput, "not a tensor algebra");
  return *impl_->right;
}

Index BlockAlgebra::tensor_index(Index p, Index q) const {
  return impl_->tensor_table[p * impl_->right->total_dim() + q];
}

bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
  return a.impl_ == b.impl_ || a.impl_->dims == b.impl_->dims;
}

BlockAlgebra tensor_algebra(const BlockAlgebra& a1, const BlockAlgebra& a2) {
  std::vector<int> dims;
  dims.reserve(a1.num_blocks() * a2.num_blocks());
  for (int d : a1.block_dims()) {
    for (int e : a2.block_dims()) dims.push_back(d * e);
  }
  auto impl = make_impl(std::move(dims));
  impl->left = std::make_shared<const BlockAlgebra>(a1);
  impl->right = std::make_shared<const BlockAlgebra>(a2);

  const Index n1 = a1.total_dim();
  const Index n2 = a2.total_dim();
  impl->tensor_table.resize(n1 * n2);
  for (Index p = 0; p < n1; ++p) {
    auto [i, r1, c1] = a1.locate(p);
    for (Index q = 0; q < n2; ++q) {
      auto [j, r2, c2] = a2.locate(q);
      const int e = a2.block_dim(j);
      const int b = i * a2.num_blocks() + j;
      const int db = impl->dims[b];
      const Index row = static_cast<Index>(r1) * e + r2;
      const Index col = static_cast<Index>(c1) * e + c2;
      impl->tensor_table[p * n2 + q] = impl->offsets[b] + row * db + col;
    }
  }
  return BlockAlgebra(std::shared_ptr<const BlockAlgebra::Impl>(std::move(impl)));
}

// ---------------------------------------------------------------------------

Element::Element(BlockAlgebra algebra, Vector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.total_dim()) {
    throw Error(ErrorKind::InvalidInput,
                "coordinate vector of size " + std::to_string(coords_.size()) +
                    " does not match algebra dimension " +
                    std::to_string(algebra_.total_dim()));
  }
}

Element Element::zero(const BlockAlgebra& algebra) {
  return Element(algebra, Vector::Zero(algebra.total_dim()));
}

Element Element::unit(const BlockAlgebra& algebra) {
  Vector c = Vector::Zero(algebra.total_dim());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    for (int i = 0; i < algebra.block_dim(k); ++i) c[algebra.index(k, i, i)] = 1.0;
  }
  return Element(algebra, std::move(c));
}

Element Element::matrix_unit(const BlockAlgebra& algebra, int k, int i, int j) {
  return basis(algebra, algebra.index(k, i, j));
}

Element Element::basis(const BlockAlgebra& algebra, Index coordinate) {
  Vector c = Vector::Zero(algebra.total_dim());
  c[coordinate] = 1.0;
  return Element(algebra, std::move(c));
}

Element Element::from_blocks(const BlockAlgebra& algebra,
                             const std::vector<Matrix>& blocks) {
  if (static_cast<int>(blocks.size()) != algebra.num_blocks()) {
    throw Error(ErrorKind::InvalidInput, "block count mismatch");
  }
  Vector c(algebra.total_dim());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int d = algebra.block_dim(k);
    if (blocks[k].rows() != d || blocks[k].cols() != d) {
      throw Error(ErrorKind::InvalidInput,
                  "block " + std::to_string(k) + " has wrong shape");
    }
    BlockView(c.data() + algebra.offset(k), d, d) = blocks[k];
  }
  return Element(algebra, std::move(c));
}

ConstBlockView Element::block(int k) const {
  const int d = algebra_.block_dim(k);
  return ConstBlockView(coords_.data() + algebra_.offset(k), d, d);
}

Matrix Element::block_matrix(int k) const { return block(k); }

Element Element::adjoint() const {
  if (algebra_.is_commutative()) return Element(algebra_, coords_.conjugate());
  Vector c(coords_.size());
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int d = algebra_.block_dim(k);
    BlockView(c.data() + algebra_.offset(k), d, d) = block(k).adjoint();
  }
  return Element(algebra_, std::move(c));
}

double Element::operator_norm() const {
  if (algebra_.is_commutative()) {
    return coords_.size() == 0 ? 0.0 : coords_.cwiseAbs().maxCoeff();
  }
  double best = 0.0;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(block(k));
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

Element& Element::operator+=(const Element& other) {
  if (algebra_ != other.algebra_) {
    throw Error(ErrorKind::InvalidInput, "adding elements of different algebras");
  }
  coords_ += other.coords_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (algebra_ != other.algebra_) {
    throw Error(ErrorKind::InvalidInput, "subtracting elements of different algebras");
  }
  coords_ -= other.coords_;
  return *this;
}

Element& Element::operator*=(cd scalar) {
  coords_ *= scalar;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  const BlockAlgebra& alg = a.algebra();
  if (alg != b.algebra()) {
    throw Error(ErrorKind::InvalidInput, "multiplying elements of different algebras");
  }
  if (alg.is_commutative()) {
    return Element(alg, a.coords().cwiseProduct(b.coords()));
  }
  Vector c(alg.total_dim());
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int d = alg.block_dim(k);
    BlockView out(c.data() + alg.offset(k), d, d);
    if (d == 1) {
      out(0, 0) = a.block(k)(0, 0) * b.block(k)(0, 0);
    } else {
      out.noalias() = a.block(k) * b.block(k);
    }
  }
  return Element(alg, std::move(c));
}

double distance(const Element& x, const Element& y) {
  if (x.algebra() != y.algebra()) {
    throw Error(ErrorKind::InvalidInput, "comparing elements of different algebras");
  }
  return (x.coords() - y.coords()).norm();
}

// ---------------------------------------------------------------------------

namespace {

void require_tensor_of(const BlockAlgebra& target, const BlockAlgebra& a1,
                       const BlockAlgebra& a2) {
  if (!target.is_tensor() || target.left_factor() != a1 || target.right_factor() != a2) {
    throw Error(ErrorKind::InvalidInput, "target is not the matching tensor algebra");
  }
}

}  // namespace

Element kron(const Element& x, const Element& y, const BlockAlgebra& target) {
  require_tensor_of(target, x.algebra(), y.algebra());
  const Index n1 = x.algebra().total_dim();
  const Index n2 = y.algebra().total_dim();
  Vector c = Vector::Zero(target.total_dim());
  for (Index p = 0; p < n1; ++p) {
    const cd xp = x.coords()[p];
    if (xp == cd(0.0)) continue;
    for (Index q = 0; q < n2; ++q) c[target.tensor_index(p, q)] = xp * y.coords()[q];
  }
  return Element(target, std::move(c));
}

Element kron(const Element& x, const Element& y) {
  return kron(x, y, tensor_algebra(x.algebra(), y.algebra()));
}

Matrix tensor_coefficients(const Element& x) {
  const BlockAlgebra& alg = x.algebra();
  if (!alg.is_tensor()) {
    throw Error(ErrorKind::InvalidInput, "element does not live in a tensor algebra");
  }
  const Index n1 = alg.left_factor().total_dim();
  const Index n2 = alg.right_factor().total_dim();
  Matrix out(n1, n2);
  for (Index p = 0; p < n1; ++p) {
    for (Index q = 0; q < n2; ++q) out(p, q) = x.coords()[alg.tensor_index(p, q)];
  }
  return out;
}

Element from_tensor_coefficients(const Matrix& coefficients, const BlockAlgebra& target) {
  if (!target.is_tensor() || coefficients.rows() != target.left_factor().total_dim() ||
      coefficients.cols() != target.right_factor().total_dim()) {
    throw Error(ErrorKind::InvalidInput, "coefficient matrix does not fit target");
  }
  Vector c(target.total_dim());
  for (Index p = 0; p < coefficients.rows(); ++p) {
    for (Index q = 0; q < coefficients.cols(); ++q) {
      c[target.tensor_index(p, q)] = coefficients(p, q);
    }
  }
  return Element(target, std::move(c));
}

Element flip(const Element& x) {
  const BlockAlgebra& alg = x.algebra();
  if (!alg.is_tensor()) {
    throw Error(ErrorKind::InvalidInput, "flip needs an element of a tensor algebra");
  }
  return flip(x, tensor_algebra(alg.right_factor(), alg.left_factor()));
}

Element flip(const Element& x, const BlockAlgebra& target) {
  const BlockAlgebra& alg = x.algebra();
  if (!alg.is_tensor()) {
    throw Error(ErrorKind::InvalidInput, "flip needs an element of a tensor algebra");
  }
  require_tensor_of(target, alg.right_factor(), alg.left_factor());
  return from_tensor_coefficients(tensor_coefficients(x).transpose(), target);
}

Element apply_tensor_maps(const Element& x, const Matrix* left, const Matrix* right,
                          const BlockAlgebra& target) {
  Matrix coeffs = tensor_coefficients(x);
  if (left != nullptr) coeffs = (*left) * coeffs;
  if (right != nullptr) coeffs = coeffs * right->transpose();
  return from_tensor_coefficients(coeffs, target);
}

Element reassociate(const Element& x, const BlockAlgebra& target) {
  if (x.algebra() != target) {
    throw Error(ErrorKind::InvalidInput, "reassociation needs identical block structure");
  }
  return Element(target, x.coords());
}

Element random_element(const BlockAlgebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector c(algebra.total_dim());
  for (Index i = 0; i < c.size(); ++i) c[i] = cd(normal(rng), normal(rng));
  return Element(algebra, std::move(c));
}

Element random_positive(const BlockAlgebra& algebra, std::mt19937_64& rng, double lo,
                        double hi) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int d = algebra.block_dim(k);
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) g(i, j) = cd(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix u = qr.householderQ();
    Eigen::VectorXd lambda(d);
    for (Index i = 0; i < d; ++i) lambda[i] = uniform(rng);
    Matrix rho = u * lambda.cast<cd>().asDiagonal() * u.adjoint();
    blocks.push_back(0.5 * (rho + rho.adjoint()));
  }
  return Element::from_blocks(algebra, blocks);
}

}  // namespace qgl
