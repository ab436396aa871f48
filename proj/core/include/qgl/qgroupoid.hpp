#pragma once

// The assembled tuple (A, Delta, E, B, nu, phi, psi) and the itemized
// verification of the quantum groupoid axioms.

#include <string>
#include <vector>

#include "qgl/algebra.hpp"
#include "qgl/linear_map.hpp"
#include "qgl/options.hpp"
#include "qgl/report.hpp"
#include "qgl/sepid.hpp"
#include "qgl/weights.hpp"

namespace qgl {

struct QuantumGroupoidData {
  BlockAlgebra A;
  /// A -> A (x) A, declared multiplicative and *-preserving.
  LinearMap delta;
  /// In tensor_algebra(A, A).
  Element E;
  /// (B, C, R, nu) of the separability triple; its idempotent is solved, not stored.
  BaseData base;
  SubalgebraEmbedding iota_B;
  SubalgebraEmbedding iota_C;
  Weight phi;
  Weight psi;
};

/// Weak coassociativity, the structural product note and the four fullness spans.
VerificationReport check_comultiplication(const BlockAlgebra& A, const LinearMap& delta,
                                          const CheckOptions& options);

/// Density both sides, projection, E(Delta a) = Delta a = (Delta a)E, leg
/// commutation, (id (x) Delta)(E) and (Delta (x) id)(E), cancellation, uniqueness.
VerificationReport check_canonical_idempotent(const QuantumGroupoidData& qg,
                                              const CheckOptions& options);

/// Result of extending a multiplier action from a generating set of a right
/// (or left) ideal.
struct MultiplierSolution {
  explicit MultiplierSolution(Element m) : multiplier(std::move(m)) {}
  Element multiplier;
  /// max_i ||D g_i - h_i|| / max(1, ||h_i||); large when the action is ill-defined.
  double consistency = 0.0;
};

/// The element D, zero on the orthogonal complement of the right ideal
/// generated by the g_i, with D g_i = h_i.
MultiplierSolution solve_left_multiplier(const BlockAlgebra& algebra,
                                         const std::vector<Element>& generators,
                                         const std::vector<Element>& images);
/// The element D with g_i D = h_i.
MultiplierSolution solve_right_multiplier(const BlockAlgebra& algebra,
                                          const std::vector<Element>& generators,
                                          const std::vector<Element>& images);

struct UnitExtension {
  UnitExtension(Element l, Element r) : left(std::move(l)), right(std::move(r)) {}
  /// Action of Delta~(1) on span{Delta(a) z}.
  Element left;
  /// Action on span{z Delta(a)}.
  Element right;
  double consistency = 0.0;
};

/// Delta~(m) from sum Delta(a_i) z_i -> sum Delta(m a_i) z_i and its mirror.
UnitExtension extend_multiplier(const QuantumGroupoidData& qg, const Element& m);
/// extend_multiplier at m = 1. Throws Error(Numerical) when the action is
/// inconsistent beyond 1e-6.
Element extend_to_unit(const QuantumGroupoidData& qg);

VerificationReport check_extension(const QuantumGroupoidData& qg, const CheckOptions& options);

/// Coassociativity of Delta on a basis and of E through the triple-level multiplier recipe.
VerificationReport check_coassociativity(const QuantumGroupoidData& qg,
                                         const CheckOptions& options);

/// Delta on the images of B and C, and B-C commutation.
VerificationReport check_base_relations(const QuantumGroupoidData& qg,
                                        const CheckOptions& options);

/// Side::Left checks phi with (id (x) phi)(Delta a) in C, Side::Right checks
/// psi with (psi (x) id)(Delta a) in B.
VerificationReport check_invariance(const QuantumGroupoidData& qg, Side side,
                                    const CheckOptions& options);

/// nu((psi (x) id)(Delta x)) = psi(x), mu((id (x) phi)(Delta x)) = phi(x) and
/// the sigma^phi-stability of B.
VerificationReport check_weight_compatibility(const QuantumGroupoidData& qg,
                                              const CheckOptions& options);

VerificationReport verify_quantum_groupoid(const QuantumGroupoidData& qg,
                                           const CheckOptions& options = {});

/// (Delta (x) id)(x) and (id (x) Delta)(x) in tensor_algebra(tensor_algebra(A, A), A).
Element delta_left_leg(const QuantumGroupoidData& qg, const Element& x);
Element delta_right_leg(const QuantumGroupoidData& qg, const Element& x);

}  // namespace qgl
