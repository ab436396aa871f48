#pragma once

// Quantum groupoid data built from finite groupoids (function and convolution
// models), weak Hopf data, and the small base triples used as fixtures.

#include <vector>

#include "qgl/groupoid.hpp"
#include "qgl/linear_map.hpp"
#include "qgl/qgroupoid.hpp"
#include "qgl/sepid.hpp"
#include "qgl/weights.hpp"

namespace qgl {

/// Functions on G: one coordinate per arrow in element order, Delta f(p, q) = f(pq),
/// E the composable-pair indicator, B and C pulled back along s and t, nu, phi
/// and psi counting measures. Throws Error(InvalidInput) if G is not a groupoid.
QuantumGroupoidData function_algebra_model(const FiniteGroupoid& g);
/// Same with a user-supplied nu (values on the units, in unit order). Throws
/// Error(InvalidInput) unless nu is the counting measure, which E forces.
QuantumGroupoidData function_algebra_model(const FiniteGroupoid& g,
                                           const std::vector<double>& nu_values);
/// Assembles with any faithful nu and leaves the verdict to the checker.
QuantumGroupoidData function_algebra_model_unchecked(const FiniteGroupoid& g,
                                                     const std::vector<double>& nu_values);

/// The convolution algebra in Wedderburn form: a connected component with k
/// objects and abelian isotropy H gives |H| blocks M_k, one per character.
/// Delta(lambda_g) = lambda_g (x) lambda_g, E = sum_u lambda_u (x) lambda_u,
/// B = C = span{lambda_u}, phi = psi with phi(lambda_g) = [g is a unit].
/// Throws Error(Unsupported) for nonabelian isotropy.
QuantumGroupoidData convolution_algebra_model(const FiniteGroupoid& g);

/// Coordinates of lambda_p (element order) in the Wedderburn form, one column per arrow.
Matrix convolution_lambda_matrix(const FiniteGroupoid& g);

struct WeakHopfData {
  BlockAlgebra A;
  LinearMap delta;
  Functional epsilon;
  LinearMap S;
};

/// epsilon(f) = sum of f over units, (S f)(p) = f(p^-1).
WeakHopfData function_weak_hopf(const FiniteGroupoid& g);
/// epsilon(lambda_g) = 1, S(lambda_g) = lambda_{g^-1}.
WeakHopfData convolution_weak_hopf(const FiniteGroupoid& g);

struct CounitalMaps {
  LinearMap eps_s;
  LinearMap eps_t;
  /// Images of eps_s and eps_t as subalgebras of A.
  SubalgebraEmbedding B;
  SubalgebraEmbedding C;
};

/// eps_s(x) = (id (x) epsilon)((1 (x) x)Delta(1)), eps_t(x) = (epsilon (x) id)(Delta(1)(x (x) 1)).
/// Images are recovered from the spectral projections of a generic
/// self-adjoint element; throws Error(Unsupported) if an image is not commutative.
CounitalMaps counital_maps(const WeakHopfData& w, double tol = 1e-9);

/// phi o S = phi and (id (x) phi)(Delta(1)) = 1.
VerificationReport check_weak_hopf_haar(const WeakHopfData& w, const Weight& phi,
                                        double tol = 1e-9);
/// S o eps_t = eps_s o S on a basis.
VerificationReport check_counital_coherence(const WeakHopfData& w, double tol = 1e-9);

/// B = C = M_n, R the transpose, nu = n Tr. The idempotent is (1/n) sum e_ij (x) e_ij.
BaseData matrix_base(int n);
/// B = C = C^k, R = id, nu with the given weights.
BaseData commutative_base(const std::vector<double>& weights);

}  // namespace qgl
