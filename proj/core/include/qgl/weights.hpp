#pragma once

// Faithful positive functionals given by density elements, their modular
// groups, GNS data and slice maps.

#include <string>
#include <vector>

#include "qgl/algebra.hpp"
#include "qgl/options.hpp"
#include "qgl/report.hpp"

namespace qgl {

/// x -> sum_k tr(rho_k x_k) with rho Hermitian positive definite per block.
class Weight {
 public:
  /// Throws Error(InvalidInput) if the density is not Hermitian positive definite.
  Weight(BlockAlgebra algebra, Element density);

  static Weight trace(const BlockAlgebra& algebra, double scale = 1.0);
  /// The weight taking the given values on the matrix-unit basis.
  static Weight from_values(const BlockAlgebra& algebra, const Vector& values);

  const BlockAlgebra& algebra() const { return algebra_; }
  const Element& density() const { return density_; }

  cd operator()(const Element& x) const;
  /// Values on the matrix-unit basis: values()[p] = W(e_p).
  const Vector& values() const { return values_; }

  /// rho^w by spectral calculus.
  Element density_power(cd w) const;
  Element log_density() const;
  /// sigma_z(x) = rho^{iz} x rho^{-iz}.
  Element modular(cd z, const Element& x) const;
  /// sigma_z as a coordinate matrix.
  Matrix modular_matrix(cd z) const;
  double min_eigenvalue() const;
  bool is_tracial(double tol) const;

 private:
  BlockAlgebra algebra_;
  Element density_;
  Vector values_;
  std::vector<Matrix> eigvecs_;
  std::vector<Eigen::VectorXd> eigvals_;
};

/// Density kron(rho_1, rho_2) on tensor_algebra(W1.algebra(), W2.algebra()).
Weight tensor_weight(const Weight& w1, const Weight& w2);

/// omega(x) = sum_k tr(tau_k x_k), no positivity assumed.
class Functional {
 public:
  Functional(BlockAlgebra algebra, Element rep);
  static Functional from_values(const BlockAlgebra& algebra, const Vector& values);
  static Functional of(const Weight& w) { return Functional(w.algebra(), w.density()); }

  const BlockAlgebra& algebra() const { return algebra_; }
  const Element& rep() const { return rep_; }
  const Vector& values() const { return values_; }
  cd operator()(const Element& x) const;
  /// Dual of the operator norm: sum of per-block trace norms of tau.
  double norm() const;

 private:
  BlockAlgebra algebra_;
  Element rep_;
  Vector values_;
};

/// The positive functional with density (tau tau^*)^{1/2}.
Functional functional_abs(const Functional& omega);

/// Values on the basis of the functional represented by `rep`.
Vector values_of_rep(const Element& rep);
/// Inverse of values_of_rep.
Element rep_of_values(const BlockAlgebra& algebra, const Vector& values);

enum class Side { Left, Right };

/// (F (x) id)(x) for Side::Left and (id (x) F)(x) for Side::Right, F given by
/// its basis values on the corresponding factor.
Element slice(Side side, const Vector& functional_values, const Element& x);
inline Element slice(Side side, const Weight& w, const Element& x) {
  return slice(side, w.values(), x);
}
inline Element slice(Side side, const Functional& f, const Element& x) {
  return slice(side, f.values(), x);
}

/// Residuals of the KMS identity, sigma-invariance and psi(ax) = psi(x sigma_{-i}(a)).
VerificationReport check_kms(const Weight& w, const CheckOptions& options,
                             const std::string& id_prefix);

/// Group law, unitarity of sigma_t and the adjoint rule for analytic continuation.
VerificationReport check_modular_group(const Weight& w, const CheckOptions& options,
                                       const std::string& id_prefix);

/// GNS space in coordinates: Lambda is the identity and <u, v> = v^H G u.
class GNSData {
 public:
  explicit GNSData(Weight weight);

  const Weight& weight() const { return weight_; }
  Index hilbert_dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }

  Vector lambda(const Element& a) const { return a.coords(); }
  cd inner(const Vector& u, const Vector& v) const { return v.dot(gram_ * u); }
  /// Left multiplication by a.
  Matrix pi(const Element& a) const;
  /// Adjoint with respect to the GNS inner product.
  Matrix adjoint(const Matrix& op) const;
  /// Antilinear modular conjugation.
  Vector J(const Vector& v) const;
  /// a -> rho a rho^{-1}.
  const Matrix& nabla() const { return nabla_; }
  /// nabla^z through the Hermitian form G^{1/2} nabla G^{-1/2}.
  Matrix nabla_power(cd z) const;

 private:
  Weight weight_;
  Matrix gram_;
  Matrix gram_sqrt_;
  Matrix gram_inv_sqrt_;
  Matrix nabla_;
  Matrix hermitian_eigvecs_;
  Eigen::VectorXd hermitian_eigvals_;
};

GNSData gns(const Weight& w);

/// Inner product, pi, J, nabla relations and the Lambda(xa) rule on basis pairs.
VerificationReport check_gns(const GNSData& data, const CheckOptions& options,
                             const std::string& id_prefix);

/// Residuals of the slice Fubini rule, positivity of slices and the tensor
/// weight's modular group.
VerificationReport check_tensor_weight(const Weight& w1, const Weight& w2,
                                       const CheckOptions& options,
                                       const std::string& id_prefix);

/// Smallest eigenvalue over all blocks of a Hermitian element (Hermitian part taken).
double min_eigenvalue(const Element& x);

/// lhs = (psi (x) id)(y^*x)^*(psi (x) id)(y^*x), rhs = ||(psi (x) id)(y^*y)|| (psi (x) id)(x^*x).
/// Returns min eigenvalue of rhs - lhs scaled by max(1, ||rhs||). Side::Right
/// slices the second leg with psi instead.
double cauchy_schwarz_margin(const Weight& psi, const Element& x, const Element& y,
                             Side side = Side::Left);

/// |omega(a)|^2 <= ||omega|| |omega|(a^*a): returns (rhs - lhs) / max(1, rhs).
double omegabar_margin(const Functional& omega, const Element& a);

/// ||omega|| (id (x) |omega|)(z^*z) - (id (x) omega)(z)^*(id (x) omega)(z), min eigenvalue scaled.
double omegabar_slice_margin(const Functional& omega, const Element& z);

}  // namespace qgl
