#pragma once

// Separability idempotents E in B (x) C for a base (B, nu) with a
// *-anti-isomorphism R : B -> C, and the gamma-map calculus around them.

#include <optional>
#include <string>

#include "qgl/algebra.hpp"
#include "qgl/linear_map.hpp"
#include "qgl/options.hpp"
#include "qgl/report.hpp"
#include "qgl/weights.hpp"

namespace qgl {

/// The data an idempotent is solved from.
struct BaseData {
  BlockAlgebra B;
  BlockAlgebra C;
  LinearMap R;
  Weight nu;
};

enum class SolveStatus { Solved, NoSolution };

struct SolveResult {
  explicit SolveResult(Element c) : candidate(std::move(c)) {}

  SolveStatus status = SolveStatus::NoSolution;
  /// The linear-solve candidate, also present when status is NoSolution.
  Element candidate;
  double linear_residual = 0.0;
  double selfadjoint_residual = 0.0;
  double idempotent_residual = 0.0;
  Index rank = 0;
  Index nullity = 0;
  std::string diagnostic;

  bool solved() const { return status == SolveStatus::Solved; }
};

/// Solves (nu (x) id)(E(b_k (x) 1)) = R(sigma^nu_{i/2}(b_k)) over the basis of
/// B together with (nu (x) id)(E) = 1, then tests E* = E and E^2 = E.
/// Throws Error(InvalidInput) when R does not map B to C.
SolveResult solve_separability_idempotent(const BaseData& base, double tol = 1e-9);

class SeparabilityTriple {
 public:
  /// Derives mu, gamma_B and gamma_C. Throws Error(InvalidInput) when E fails
  /// the defining conditions or a gamma map is not anti-multiplicative.
  static SeparabilityTriple build(const BaseData& base, const Element& E, double tol = 1e-9);

  const BlockAlgebra& B() const { return base_.B; }
  const BlockAlgebra& C() const { return base_.C; }
  const LinearMap& R() const { return base_.R; }
  const LinearMap& R_inverse() const { return R_inv_; }
  const Weight& nu() const { return base_.nu; }
  const Weight& mu() const { return *mu_; }
  const Element& E() const { return E_; }
  const LinearMap& gamma_B() const { return gamma_B_; }
  const LinearMap& gamma_C() const { return gamma_C_; }
  const BaseData& base() const { return base_; }

  /// (C, mu, R^{-1}) with the flipped idempotent.
  SeparabilityTriple mirrored(double tol = 1e-9) const;

 private:
  SeparabilityTriple(BaseData base, Element E, LinearMap R_inv, Weight mu, LinearMap gamma_B,
                     LinearMap gamma_C);
  BaseData base_;
  Element E_;
  LinearMap R_inv_;
  std::optional<Weight> mu_;
  LinearMap gamma_B_;
  LinearMap gamma_C_;
};

/// mu = nu o R^{-1} as a weight on C.
Weight induced_weight(const BaseData& base);

/// (nu (x) id)(E) = 1 and (nu (x) id)(E(b (x) 1)) = R(sigma^nu_{i/2}(b)).
VerificationReport check_separability_conditions(const BaseData& base, const Element& E,
                                                 double tol, const std::string& id_prefix);

/// Sub-checks a-l of the separability calculus plus the gamma formulas.
VerificationReport check_sepid_properties(const SeparabilityTriple& triple,
                                          const CheckOptions& options,
                                          const std::string& id_prefix = "sepid");

}  // namespace qgl
