#pragma once

#include <functional>
#include <string>

#include "qgl/algebra.hpp"
#include "qgl/report.hpp"

namespace qgl {

struct MapFlags {
  bool multiplicative = false;
  bool anti_multiplicative = false;
  bool star_preserving = false;
  bool unital = false;
  bool injective = false;
};

/// A linear map between block algebras, stored as its coordinate matrix
/// (codomain dim x domain dim). Flags are claims; `verified` checks them.
class LinearMap {
 public:
  LinearMap(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix,
            MapFlags declared = {});

  /// Builds the map and checks every declared flag on basis pairs. Throws
  /// Error(InvalidInput) naming the failed flags.
  static LinearMap verified(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix,
                            MapFlags declared, double tol);
  static LinearMap identity(const BlockAlgebra& algebra);
  /// Tabulates a linear function on the basis of `domain`.
  static LinearMap from_function(const BlockAlgebra& domain,
                                 const BlockAlgebra& codomain,
                                 const std::function<Element(const Element&)>& fn,
                                 MapFlags declared = {});

  const BlockAlgebra& domain() const { return domain_; }
  const BlockAlgebra& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }
  const MapFlags& flags() const { return flags_; }

  Element operator()(const Element& x) const;

  /// this o inner. Flags are not propagated.
  LinearMap after(const LinearMap& inner) const;
  /// Throws Error(Numerical) if the matrix is not invertible.
  LinearMap inverse() const;

 private:
  BlockAlgebra domain_;
  BlockAlgebra codomain_;
  Matrix matrix_;
  MapFlags flags_;
};

using ElementFunction = std::function<Element(const Element&)>;

/// Residuals for linearity, (anti-)multiplicativity, *-preservation and
/// unitality of `map` on the matrix-unit basis of `domain`. Pass unital=false
/// for maps into a multiplier algebra that need not preserve 1 (comultiplications).
VerificationReport check_star_homomorphism(const BlockAlgebra& domain,
                                           const ElementFunction& map, bool anti,
                                           double tol, const std::string& id_prefix,
                                           bool unital = true);
VerificationReport check_star_homomorphism(const LinearMap& map, bool anti, double tol,
                                           const std::string& id_prefix,
                                           bool unital = true);

/// Checks exactly the flags `map` declares.
VerificationReport verify_flags(const LinearMap& map, double tol,
                                const std::string& id_prefix);

/// A unital injective *-homomorphism presenting `abstract` inside `host`.
class SubalgebraEmbedding {
 public:
  SubalgebraEmbedding(BlockAlgebra abstract, BlockAlgebra host, Matrix iota);

  const BlockAlgebra& abstract() const { return iota_.domain(); }
  const BlockAlgebra& host() const { return iota_.codomain(); }
  const LinearMap& iota() const { return iota_; }
  Element operator()(const Element& x) const { return iota_(x); }

  /// Images of the abstract basis, one per column.
  const Matrix& image_basis() const { return iota_.matrix(); }

  /// Unitality, multiplicativity, *-preservation and isometry on basis pairs.
  VerificationReport check(double tol, const std::string& id_prefix) const;

 private:
  LinearMap iota_;
};

}  // namespace qgl
