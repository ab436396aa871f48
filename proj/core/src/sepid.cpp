#include "qgl/sepid.hpp"

#include <algorithm>
#include <sstream>

#include "qgl/error.hpp"
#include "qgl/span.hpp"

namespace qgl {

namespace {

constexpr cd kHalfI(0.0, 0.5);

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

double matrix_gap(const Matrix& a, const Matrix& b) {
  return rel((a - b).norm(), b.norm());
}

void require_base_shape(const BaseData& base) {
  if (base.R.domain() != base.B || base.R.codomain() != base.C) {
    throw Error(ErrorKind::InvalidInput, "R must map B to C");
  }
  if (base.nu.algebra() != base.B) {
    throw Error(ErrorKind::InvalidInput, "nu must be a weight on B");
  }
}

Matrix as_matrix(const LinearMap& m) { return m.matrix(); }

Element apply(const Matrix& m, const Element& x, const BlockAlgebra& target) {
  return Element(target, m * x.coords());
}

}  // namespace

Weight induced_weight(const BaseData& base) {
  require_base_shape(base);
  const Matrix r_inv = base.R.inverse().matrix();
  return Weight::from_values(base.C, r_inv.transpose() * base.nu.values());
}

// ---------------------------------------------------------------------------

SolveResult solve_separability_idempotent(const BaseData& base, double tol) {
  require_base_shape(base);
  const BlockAlgebra& B = base.B;
  const BlockAlgebra& C = base.C;
  const BlockAlgebra BC = tensor_algebra(B, C);
  const Index nb = B.total_dim();
  const Index nc = C.total_dim();

  // Row k: coefficients of (nu (x) id)(E(b_k (x) 1)) in the unknown X(p, q).
  Matrix system(nb + 1, nb);
  for (Index k = 0; k < nb; ++k) {
    const Element bk = Element::basis(B, k);
    for (Index p = 0; p < nb; ++p) system(k, p) = base.nu(Element::basis(B, p) * bk);
  }
  system.row(nb) = base.nu.values().transpose();

  const Matrix gamma = base.R.matrix() * base.nu.modular_matrix(kHalfI);
  Matrix rhs(nb + 1, nc);
  rhs.topRows(nb) = gamma.transpose();
  rhs.row(nb) = Element::unit(C).coords().transpose();

  Eigen::BDCSVD<Matrix> svd(system.topRows(nb), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-12 * s(0)) ++rank;

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
  cod.setThreshold(1e-12);
  Matrix X = cod.solve(rhs);

  auto evaluate = [&](const Matrix& coeffs, SolveResult& out) {
    out.candidate = from_tensor_coefficients(coeffs, BC);
    const Element& E = out.candidate;
    out.linear_residual = rel((system * coeffs - rhs).norm(), rhs.norm());
    out.selfadjoint_residual = distance(E, E.adjoint());
    out.idempotent_residual = distance(E * E, E);
  };

  SolveResult result(Element::zero(BC));
  result.rank = rank;
  result.nullity = nb - rank;
  evaluate(X, result);

  if (result.nullity > 0) {
    // Bounded sweep over the affine solution set along single null directions.
    const Matrix kernel = svd.matrixV().rightCols(result.nullity);
    const double grid[] = {-1.0, -0.5, 0.5, 1.0};
    SolveResult best = result;
    for (Index j = 0; j < kernel.cols(); ++j) {
      for (Index q = 0; q < nc; ++q) {
        for (double alpha : grid) {
          Matrix trial = X;
          trial.col(q) += alpha * kernel.col(j);
          SolveResult attempt(Element::zero(BC));
          attempt.rank = result.rank;
          attempt.nullity = result.nullity;
          evaluate(trial, attempt);
          if (attempt.idempotent_residual + attempt.selfadjoint_residual <
              best.idempotent_residual + best.selfadjoint_residual) {
            best = attempt;
          }
        }
      }
    }
    result = best;
  }

  const bool ok = result.linear_residual <= tol && result.selfadjoint_residual <= tol &&
                  result.idempotent_residual <= tol;
  result.status = ok ? SolveStatus::Solved : SolveStatus::NoSolution;
  std::ostringstream diag;
  if (result.nullity > 0) {
    diag << "linear system is rank deficient (rank " << rank << ", nullity " << result.nullity
         << "); ";
  }
  if (ok) {
    diag << "separability idempotent found";
  } else {
    diag << "no separability idempotent: candidate has ||E - E*|| = "
         << result.selfadjoint_residual << ", ||E^2 - E|| = " << result.idempotent_residual
         << ", linear residual " << result.linear_residual;
  }
  result.diagnostic = diag.str();
  return result;
}

// ---------------------------------------------------------------------------

VerificationReport check_separability_conditions(const BaseData& base, const Element& E,
                                                 double tol, const std::string& id_prefix) {
  require_base_shape(base);
  const BlockAlgebra BC = tensor_algebra(base.B, base.C);
  VerificationReport r;
  if (E.algebra() != BC) {
    r.add(make_verdict(id_prefix + ".shape", "E lies in B (x) C", false, 1.0, tol,
                       "E has the wrong algebra"));
    return r;
  }
  const Element one_c = Element::unit(base.C);
  const double normalization = distance(slice(Side::Left, base.nu, E), one_c);

  const Matrix gamma = base.R.matrix() * base.nu.modular_matrix(kHalfI);
  double gamma_rule = 0.0;
  for (Index k = 0; k < base.B.total_dim(); ++k) {
    const Element b = Element::basis(base.B, k);
    const Element lhs = slice(Side::Left, base.nu, E * kron(b, one_c, BC));
    gamma_rule = std::max(gamma_rule, distance(lhs, apply(gamma, b, base.C)));
  }
  r.add(make_check(id_prefix + ".normalization", "separability triple: (nu (x) id)(E) = 1",
                   normalization, tol));
  r.add(make_check(id_prefix + ".gamma",
                   "separability triple: (nu (x) id)(E(b (x) 1)) = R(sigma^nu_{i/2}(b))",
                   gamma_rule, tol));
  r.add(make_check(id_prefix + ".selfadjoint", "separability idempotent: E* = E",
                   distance(E, E.adjoint()), tol));
  r.add(make_check(id_prefix + ".idempotent", "separability idempotent: E^2 = E",
                   distance(E * E, E), tol));
  return r;
}

// ---------------------------------------------------------------------------

SeparabilityTriple::SeparabilityTriple(BaseData base, Element E, LinearMap R_inv, Weight mu,
                                       LinearMap gamma_B, LinearMap gamma_C)
    : base_(std::move(base)),
      E_(std::move(E)),
      R_inv_(std::move(R_inv)),
      mu_(std::move(mu)),
      gamma_B_(std::move(gamma_B)),
      gamma_C_(std::move(gamma_C)) {}

SeparabilityTriple SeparabilityTriple::build(const BaseData& base, const Element& E,
                                             double tol) {
  const VerificationReport conditions = check_separability_conditions(base, E, tol, "triple");
  if (!conditions.verdict()) {
    std::string failed;
    for (const Check* c : conditions.failures()) failed += (failed.empty() ? "" : ", ") + c->id;
    throw Error(ErrorKind::InvalidInput, "E is not a separability idempotent: " + failed);
  }
  LinearMap r_inv = base.R.inverse();
  Weight mu = induced_weight(base);
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.unital = true;
  flags.injective = true;
  LinearMap gamma_b(base.B, base.C, base.R.matrix() * base.nu.modular_matrix(kHalfI), flags);
  LinearMap gamma_c(base.C, base.B, r_inv.matrix() * mu.modular_matrix(-kHalfI), flags);
  VerificationReport maps = verify_flags(gamma_b, tol, "gamma_B");
  maps.append(verify_flags(gamma_c, tol, "gamma_C"));
  if (!maps.verdict()) {
    throw Error(ErrorKind::InvalidInput, "gamma maps are not injective anti-homomorphisms: " +
                                             maps.failures().front()->id);
  }
  return SeparabilityTriple(base, E, std::move(r_inv), std::move(mu), std::move(gamma_b),
                            std::move(gamma_c));
}

SeparabilityTriple SeparabilityTriple::mirrored(double tol) const {
  BaseData flipped{base_.C, base_.B, R_inv_, mu()};
  return build(flipped, flip(E_), tol);
}

// ---------------------------------------------------------------------------

VerificationReport check_sepid_properties(const SeparabilityTriple& T,
                                          const CheckOptions& options,
                                          const std::string& id_prefix) {
  const double tol = options.tol;
  const BlockAlgebra& B = T.B();
  const BlockAlgebra& C = T.C();
  const BlockAlgebra BC = T.E().algebra();
  const BlockAlgebra CB = tensor_algebra(C, B);
  const Index nb = B.total_dim();
  const Index nc = C.total_dim();
  const Element& E = T.E();
  const Element sE = flip(E, CB);
  const Element one_b = Element::unit(B);
  const Element one_c = Element::unit(C);

  const Matrix R = as_matrix(T.R());
  const Matrix R_inv = as_matrix(T.R_inverse());
  const Matrix gB = as_matrix(T.gamma_B());
  const Matrix gC = as_matrix(T.gamma_C());
  const Matrix gB_inv = T.gamma_B().inverse().matrix();
  const Matrix gC_inv = T.gamma_C().inverse().matrix();
  const Weight& nu = T.nu();
  const Weight& mu = T.mu();

  std::vector<Element> bs;
  std::vector<Element> cs;
  for (Index p = 0; p < nb; ++p) bs.push_back(Element::basis(B, p));
  for (Index q = 0; q < nc; ++q) cs.push_back(Element::basis(C, q));

  VerificationReport r;
  auto add = [&](const std::string& key, const std::string& anchor, double residual) {
    r.add(make_check(id_prefix + "." + key, anchor, residual, tol));
  };

  // (a)
  double a = 0.0;
  for (const auto& b : bs) {
    a = std::max(a, distance(E * kron(b, one_c, BC), E * kron(one_b, apply(gB, b, C), BC)));
  }
  add("a", "separability: E(b (x) 1) = E(1 (x) gamma_B(b))", a);

  // (b)
  double b_res = 0.0;
  for (const auto& c : cs) {
    b_res = std::max(b_res,
                     distance(E * kron(one_b, c, BC), E * kron(apply(gB_inv, c, B), one_c, BC)));
  }
  add("b", "separability: E(1 (x) c) = E(gamma_B^{-1}(c) (x) 1)", b_res);

  // (c)
  add("c", "separability: (id (x) mu)(E) = 1", distance(slice(Side::Right, mu, E), one_b));

  // (d)
  double d = 0.0;
  for (const auto& c : cs) {
    d = std::max(d, distance(kron(one_b, c, BC) * E, kron(apply(gC, c, B), one_c, BC) * E));
  }
  for (const auto& b : bs) {
    d = std::max(d, distance(kron(b, one_c, BC) * E, kron(one_b, apply(gC_inv, b, C), BC) * E));
  }
  add("d", "separability: (1 (x) c)E = (gamma_C(c) (x) 1)E", d);

  // (e)
  double e = 0.0;
  for (const auto& c : cs) {
    e = std::max(e, distance(slice(Side::Right, mu, kron(one_b, c, BC) * E), apply(gC, c, B)));
  }
  add("e", "separability: (id (x) mu)((1 (x) c)E) = gamma_C(c)", e);

  // (f)
  double f = 0.0;
  for (const auto& b : bs) {
    const Element lhs = apply(gC, apply(gB, b, C).adjoint(), B).adjoint();
    f = std::max(f, distance(lhs, b));
  }
  for (const auto& c : cs) {
    const Element lhs = apply(gB, apply(gC, c, B).adjoint(), C).adjoint();
    f = std::max(f, distance(lhs, c));
  }
  add("f", "gamma and involution: gamma_C(gamma_B(b)*)* = b", f);

  // (g)
  {
    std::vector<Element> e_b1, b1_e, one_c_e, e_one_c;
    for (const auto& b : bs) {
      e_b1.push_back(E * kron(b, one_c, BC));
      b1_e.push_back(kron(b, one_c, BC) * E);
    }
    for (const auto& c : cs) {
      one_c_e.push_back(kron(one_b, c, BC) * E);
      e_one_c.push_back(E * kron(one_b, c, BC));
    }
    const Index dims[] = {right_leg_span(e_b1).dim(), right_leg_span(b1_e).dim(),
                          left_leg_span(one_c_e).dim(), left_leg_span(e_one_c).dim()};
    const Index want[] = {nc, nc, nb, nb};
    Index missing = 0;
    std::ostringstream detail;
    for (int i = 0; i < 4; ++i) {
      missing += want[i] - dims[i];
      detail << (i ? ", " : "span dims ") << dims[i] << "/" << want[i];
    }
    r.add(make_verdict(id_prefix + ".g", "E is full: its legs span C and B", missing == 0,
                       static_cast<double>(missing), tol, detail.str()));
  }

  // (h)
  {
    auto smallest_sv = [](const Matrix& m) {
      Eigen::JacobiSVD<Matrix> svd(m);
      return svd.singularValues()(svd.singularValues().size() - 1);
    };
    Matrix m1(BC.total_dim(), nc), m2(BC.total_dim(), nc), m3(BC.total_dim(), nb),
        m4(BC.total_dim(), nb);
    for (Index q = 0; q < nc; ++q) {
      m1.col(q) = (kron(one_b, cs[q], BC) * E).coords();
      m2.col(q) = (E * kron(one_b, cs[q], BC)).coords();
    }
    for (Index p = 0; p < nb; ++p) {
      m3.col(p) = (E * kron(bs[p], one_c, BC)).coords();
      m4.col(p) = (kron(bs[p], one_c, BC) * E).coords();
    }
    const double s = std::min({smallest_sv(m1), smallest_sv(m2), smallest_sv(m3), smallest_sv(m4)});
    const bool injective = s > tol;
    r.add(make_verdict(id_prefix + ".h", "E is full: c -> (1 (x) c)E and its variants are injective",
                       injective, injective ? 0.0 : 1.0, tol,
                       "smallest singular value " + std::to_string(s)));
  }

  // (i)
  double i_res = matrix_gap(gB * gC, mu.modular_matrix(cd(0.0, -1.0)));
  i_res = std::max(i_res, matrix_gap(gB_inv * gC_inv, nu.modular_matrix(cd(0.0, -1.0))));
  add("i", "modular automorphisms: sigma^mu_{-i} = gamma_B o gamma_C", i_res);

  // (j)
  double j = 0.0;
  for (double t : options.sepid_t) {
    const Matrix left = nu.modular_matrix(t);
    const Matrix right = mu.modular_matrix(-t);
    j = std::max(j, distance(apply_tensor_maps(E, &left, &right, BC), E));
  }
  add("j", "modular invariance: (sigma^nu_t (x) sigma^mu_{-t})(E) = E", j);

  // (k)
  double k = distance(apply_tensor_maps(sE, &gC, &gB, BC), E);
  k = std::max(k, distance(apply_tensor_maps(E, &gB, &gC, CB), sE));
  k = std::max(k, distance(apply_tensor_maps(sE, &R_inv, &R, BC), E));
  k = std::max(k, distance(apply_tensor_maps(E, &R, &R_inv, CB), sE));
  add("k", "flip: (gamma_C (x) gamma_B)(sigma E) = E and (R^{-1} (x) R)(sigma E) = E", k);

  // (l)
  double l = 0.0;
  for (const auto& b : bs) {
    const Element gcb = apply(gC_inv, b, C);
    for (const auto& c : cs) {
      const Element gbc = apply(gB_inv, c, B);
      auto back = [&](const Element& x) { return apply_tensor_maps(x, &gC, &gB, BC); };
      const Element bc = kron(b, c, BC);
      l = std::max(l, distance(back(kron(gcb, gbc, CB) * sE), E * bc));
      l = std::max(l, distance(back(sE * kron(gcb, gbc, CB)), bc * E));
      l = std::max(l, distance(back(kron(one_c, gbc, CB) * sE * kron(gcb, one_b, CB)),
                               kron(b, one_c, BC) * E * kron(one_b, c, BC)));
      l = std::max(l, distance(back(kron(gcb, one_b, CB) * sE * kron(one_c, gbc, CB)),
                               kron(one_b, c, BC) * E * kron(b, one_c, BC)));
    }
  }
  add("l", "flip lemma: (gamma_C (x) gamma_B)((gamma_C^{-1}(b) (x) gamma_B^{-1}(c))(sigma E)) = E(b (x) c)",
      l);

  // gamma formulas and weight identities
  const Matrix s_nu_half = nu.modular_matrix(kHalfI);
  const Matrix s_nu_mhalf = nu.modular_matrix(-kHalfI);
  const Matrix s_mu_half = mu.modular_matrix(kHalfI);
  const Matrix s_mu_mhalf = mu.modular_matrix(-kHalfI);
  double formulas = matrix_gap(gB, s_mu_mhalf * R);
  formulas = std::max(formulas, matrix_gap(gB_inv, s_nu_mhalf * R_inv));
  formulas = std::max(formulas, matrix_gap(gB_inv, R_inv * s_mu_half));
  formulas = std::max(formulas, matrix_gap(gC, s_nu_half * R_inv));
  formulas = std::max(formulas, matrix_gap(gC_inv, s_mu_half * R));
  formulas = std::max(formulas, matrix_gap(gC_inv, R * s_nu_mhalf));
  for (double t : options.sepid_t) {
    formulas = std::max(formulas, matrix_gap(mu.modular_matrix(t),
                                             R * nu.modular_matrix(-t) * R_inv));
  }
  add("formulas.gamma", "gamma formulas: gamma_B = R o sigma^nu_{i/2} = sigma^mu_{-i/2} o R",
      formulas);

  const Vector nv = nu.values();
  const Vector mv = mu.values();
  double weights = (mv - R_inv.transpose() * nv).norm();
  weights = std::max(weights, (mv - gC.transpose() * nv).norm());
  weights = std::max(weights, (mv - gB_inv.transpose() * nv).norm());
  weights = std::max(weights, (nv - R.transpose() * mv).norm());
  weights = std::max(weights, (nv - gB.transpose() * mv).norm());
  weights = std::max(weights, (nv - gC_inv.transpose() * mv).norm());
  add("formulas.weights", "weights: mu = nu o R^{-1} = nu o gamma_C, nu = mu o gamma_B",
      rel(weights, nv.norm()));

  // anti o anti is multiplicative
  {
    LinearMap bc(C, C, gB * gC);
    LinearMap cb(B, B, gC * gB);
    VerificationReport compose = check_star_homomorphism(
        C, [&](const Element& x) { return bc(x); }, false, tol, "x", true);
    VerificationReport compose2 = check_star_homomorphism(
        B, [&](const Element& x) { return cb(x); }, false, tol, "x", true);
    double worst = 0.0;
    for (const auto* rep : {&compose, &compose2}) {
      for (const auto& c : rep->checks()) {
        if (c.id == "x.multiplicative" || c.id == "x.unital") worst = std::max(worst, c.residual);
      }
    }
    add("formulas.automorphisms", "gamma_B o gamma_C and gamma_C o gamma_B are automorphisms",
        worst);
  }

  r.append(check_kms(mu, options, id_prefix + ".kms_mu"));

  // mirrored triple (C, mu, R^{-1}) with sigma E
  {
    BaseData mirror{C, B, T.R_inverse(), mu};
    VerificationReport m = check_separability_conditions(mirror, sE, tol, id_prefix + ".mirror");
    r.append(m);
  }
  return r;
}

}  // namespace qgl
