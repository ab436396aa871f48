#include "qgl/qgroupoid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "qgl/error.hpp"
#include "qgl/span.hpp"

namespace qgl {

namespace {

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

double gap(const Element& x, const Element& y) { return rel(distance(x, y), y.frobenius_norm()); }

std::string dims_detail(const SpanComparison& c) {
  std::ostringstream os;
  os << "dims " << c.dim_first << " vs " << c.dim_second << ", sum " << c.dim_sum << " ("
     << to_string(c.relation) << ")";
  return os.str();
}

/// Shared per-run data: tensor algebras and the images of the basis under Delta.
struct Context {
  explicit Context(const QuantumGroupoidData& q)
      : qg(q),
        AA(tensor_algebra(q.A, q.A)),
        AAA(tensor_algebra(AA, q.A)),
        A_AA(tensor_algebra(q.A, AA)),
        D(q.delta.matrix()),
        one(Element::unit(q.A)) {
    if (q.delta.domain() != q.A || q.delta.codomain() != AA) {
      throw Error(ErrorKind::InvalidInput, "Delta must map A into A (x) A");
    }
    if (q.E.algebra() != AA) throw Error(ErrorKind::InvalidInput, "E must lie in A (x) A");
    for (Index p = 0; p < q.A.total_dim(); ++p) delta_basis.push_back(delta(basis(p)));
  }

  Index n() const { return qg.A.total_dim(); }
  Element basis(Index p) const { return Element::basis(qg.A, p); }
  Element delta(const Element& a) const { return Element(AA, D * a.coords()); }
  Element left_leg(const Element& x) const { return apply_tensor_maps(x, &D, nullptr, AAA); }
  Element right_leg(const Element& x) const {
    return reassociate(apply_tensor_maps(x, nullptr, &D, A_AA), AAA);
  }
  Element e_first(const Element& x) const { return kron(x, one, AAA); }
  Element e_last(const Element& x) const { return reassociate(kron(one, x, A_AA), AAA); }

  const QuantumGroupoidData& qg;
  BlockAlgebra AA;
  BlockAlgebra AAA;
  BlockAlgebra A_AA;
  Matrix D;
  Element one;
  std::vector<Element> delta_basis;
};

Functional random_functional(const BlockAlgebra& alg, std::mt19937_64& rng) {
  return Functional(alg, random_element(alg, rng));
}

/// Distance from y to the column span of an embedding, relative to ||y||.
double membership(const Subspace& span, const Element& y) {
  return rel(span.distance(y.coords()), y.frobenius_norm());
}

Subspace embedded_span(const SubalgebraEmbedding& iota) {
  return Subspace::from_columns(iota.image_basis());
}

template <typename Fn>
void guarded(VerificationReport& report, const std::string& id, const std::string& anchor,
             double tol, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report.add(make_verdict(id, anchor, false, std::numeric_limits<double>::infinity(), tol,
                            e.what()));
  }
}

// ---------------------------------------------------------------------------

VerificationReport comultiplication(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  VerificationReport r;
  const Index n = ctx.n();
  const BlockAlgebra& A = ctx.qg.A;

  // Weak coassociativity, exhaustive over basis triples when affordable.
  double cost = 0.0;
  for (int d : ctx.AAA.block_dims()) cost += static_cast<double>(d) * d * d;
  cost = (cost + ctx.AAA.total_dim()) * static_cast<double>(n) * n * n;
  const bool exhaustive = cost <= 2e8;
  double weak = 0.0;
  auto triple = [&](const Element& a, const Element& b, const Element& c) {
    const Element db = ctx.delta(b);
    const Element lhs = ctx.e_first(kron(a, ctx.one, ctx.AA)) *
                        ctx.left_leg(db * kron(ctx.one, c, ctx.AA));
    const Element rhs = ctx.right_leg(kron(a, ctx.one, ctx.AA) * db) *
                        ctx.e_last(kron(ctx.one, c, ctx.AA));
    weak = std::max(weak, gap(lhs, rhs));
  };
  std::string weak_detail;
  if (exhaustive) {
    // Both sides are linear in a and c, so the leg maps are computed once per (b, c) and (a, b).
    std::vector<Element> a_first, c_last;
    for (Index p = 0; p < n; ++p) {
      a_first.push_back(ctx.e_first(kron(ctx.basis(p), ctx.one, ctx.AA)));
      c_last.push_back(ctx.e_last(kron(ctx.one, ctx.basis(p), ctx.AA)));
    }
    for (Index q = 0; q < n; ++q) {
      const Element& db = ctx.delta_basis[q];
      std::vector<Element> lhs_legs, rhs_legs;
      for (Index p = 0; p < n; ++p) {
        lhs_legs.push_back(ctx.left_leg(db * kron(ctx.one, ctx.basis(p), ctx.AA)));
        rhs_legs.push_back(ctx.right_leg(kron(ctx.basis(p), ctx.one, ctx.AA) * db));
      }
      for (Index p = 0; p < n; ++p) {
        for (Index s = 0; s < n; ++s) {
          weak = std::max(weak, gap(a_first[p] * lhs_legs[s], rhs_legs[p] * c_last[s]));
        }
      }
    }
    weak_detail = "all basis triples";
  } else {
    std::mt19937_64 rng(options.seed);
    const int count = std::max(12, options.samples);
    for (int i = 0; i < count; ++i) {
      triple(random_element(A, rng), random_element(A, rng), random_element(A, rng));
    }
    weak_detail = std::to_string(count) + " random Gaussian triples";
  }
  r.add(make_check("comult.weak_coassociativity",
                   "comultiplication: (a(x)1(x)1)((Delta(x)id)((Delta b)(1(x)c))) = "
                   "((id(x)Delta)((a(x)1)(Delta b)))(1(x)1(x)c)",
                   weak, tol, weak_detail));
  r.add(make_verdict("comult.products",
                     "comultiplication: (Delta a)(1(x)b) and (a(x)1)(Delta b) lie in A(x)A", true,
                     0.0, tol, "automatic: A is unital and finite dimensional"));

  // Fullness: four spans of slices over basis pairs.
  std::vector<Element> dx_1y, x1_dy, _1y_dx, dy_x1;
  for (Index p = 0; p < n; ++p) {
    const Element& dp = ctx.delta_basis[p];
    for (Index q = 0; q < n; ++q) {
      const Element y1 = kron(ctx.one, ctx.basis(q), ctx.AA);
      const Element x1 = kron(ctx.basis(q), ctx.one, ctx.AA);
      dx_1y.push_back(dp * y1);
      _1y_dx.push_back(y1 * dp);
      x1_dy.push_back(x1 * dp);
      dy_x1.push_back(dp * x1);
    }
  }
  auto full = [&](const std::string& id, const std::string& anchor, const Subspace& s) {
    std::ostringstream os;
    os << "span dim " << s.dim() << " of " << n;
    r.add(make_verdict(id, anchor, s.dim() == n, static_cast<double>(n - s.dim()), tol,
                       os.str()));
  };
  full("comult.full_left", "comultiplication: {(id(x)w)((Delta x)(1(x)y))} spans A",
       left_leg_span(dx_1y));
  full("comult.full_right", "comultiplication: {(w(x)id)((x(x)1)(Delta y))} spans A",
       right_leg_span(x1_dy));
  full("comult.full_left_variant", "comultiplication: {(id(x)w)((1(x)y)(Delta x))} spans A",
       left_leg_span(_1y_dx));
  full("comult.full_right_variant", "comultiplication: {(w(x)id)((Delta y)(x(x)1))} spans A",
       right_leg_span(dy_x1));
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport canonical_idempotent(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  const Element& E = ctx.qg.E;
  const BlockAlgebra& AA = ctx.AA;
  VerificationReport r;

  const IdealSpan right_delta = right_ideal_span(AA, ctx.delta_basis);
  const IdealSpan left_delta = left_ideal_span(AA, ctx.delta_basis);
  const IdealSpan right_e = right_ideal_span(AA, {E});
  const IdealSpan left_e = left_ideal_span(AA, {E});
  const SpanComparison cl = compare_ideals(right_delta, right_e);
  const SpanComparison cr = compare_ideals(left_delta, left_e);
  r.add(make_verdict("idempotent.density_left",
                     "canonical idempotent: Delta(A)(A(x)A) dense in E(A(x)A)",
                     cl.relation == SpanRelation::Equal,
                     static_cast<double>(cl.dim_sum - std::min(cl.dim_first, cl.dim_second)),
                     tol, dims_detail(cl)));
  r.add(make_verdict("idempotent.density_right",
                     "canonical idempotent: (A(x)A)Delta(A) dense in (A(x)A)E",
                     cr.relation == SpanRelation::Equal,
                     static_cast<double>(cr.dim_sum - std::min(cr.dim_first, cr.dim_second)),
                     tol, dims_detail(cr)));

  r.add(make_check("idempotent.selfadjoint", "canonical idempotent: E* = E",
                   gap(E.adjoint(), E), tol));
  r.add(make_check("idempotent.projection", "canonical idempotent: E^2 = E", gap(E * E, E),
                   tol));

  double absorb = 0.0;
  for (const Element& d : ctx.delta_basis) {
    absorb = std::max({absorb, gap(E * d, d), gap(d * E, d)});
  }
  r.add(make_check("idempotent.absorbs_delta", "E(Delta a) = Delta a = (Delta a)E", absorb,
                   tol));

  const Element e1 = ctx.e_first(E);
  const Element e2 = ctx.e_last(E);
  const Element e12 = e1 * e2;
  r.add(make_check("idempotent.commute",
                   "canonical idempotent: (E(x)1)(1(x)E) = (1(x)E)(E(x)1)",
                   gap(e12, e2 * e1), tol));
  r.add(make_check("idempotent.id_delta_E",
                   "canonical idempotent: (id(x)Delta)(E) = (E(x)1)(1(x)E)",
                   gap(ctx.right_leg(E), e12), tol));
  r.add(make_check("idempotent.delta_id_E",
                   "canonical idempotent: (Delta(x)id)(E) = (E(x)1)(1(x)E)",
                   gap(ctx.left_leg(E), e12), tol));

  // Cancellation: w annihilating Delta(A) from one side kills E from that side.
  std::mt19937_64 rng(options.seed + 7);
  double cancel = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    std::vector<Matrix> wl, wr;
    for (int k = 0; k < AA.num_blocks(); ++k) {
      const int d = AA.block_dim(k);
      const Matrix I = Matrix::Identity(d, d);
      Matrix z = random_element(BlockAlgebra({d}), rng).block_matrix(0);
      wl.push_back(z * (I - right_delta.blocks[k].projector()));
      wr.push_back((I - left_delta.blocks[k].projector()) * z);
    }
    const Element x = random_element(AA, rng);
    const Element yl = x + Element::from_blocks(AA, wl);
    const Element yr = x + Element::from_blocks(AA, wr);
    double annihilated = 0.0;
    for (const Element& d : ctx.delta_basis) {
      annihilated = std::max({annihilated, gap(x * d, yl * d), gap(d * x, d * yr)});
    }
    if (annihilated > tol) {
      throw Error(ErrorKind::Numerical, "annihilator construction failed");
    }
    cancel = std::max({cancel, gap(x * E, yl * E), gap(E * x, E * yr)});
  }
  r.add(make_check("idempotent.cancellation",
                   "x(Delta a) = y(Delta a) for all a implies xE = yE (and mirrored)", cancel,
                   tol, std::to_string(options.samples) + " random annihilator pairs"));

  // Uniqueness: a projection with range the right (left) ideal of Delta(A) is
  // the orthogonal projection onto it.
  const Element p_right = ideal_projection(AA, right_delta);
  const Element p_left = ideal_projection(AA, left_delta);
  r.add(make_check("idempotent.uniqueness",
                   "canonical idempotent: a projection satisfying both density conditions is E",
                   std::max(gap(p_right, E), gap(p_left, E)), tol,
                   "solution set is the single projection onto the density ideal"));
  return r;
}

// ---------------------------------------------------------------------------

MultiplierSolution solve_blockwise(const BlockAlgebra& algebra,
                                   const std::vector<Element>& generators,
                                   const std::vector<Element>& images) {
  if (generators.size() != images.size() || generators.empty()) {
    throw Error(ErrorKind::InvalidInput, "multiplier data needs matching nonempty lists");
  }
  double scale = 0.0;
  for (const Element& g : generators) {
    if (g.algebra() != algebra) throw Error(ErrorKind::InvalidInput, "generator outside algebra");
    scale = std::max(scale, g.frobenius_norm());
  }
  for (const Element& h : images) {
    if (h.algebra() != algebra) throw Error(ErrorKind::InvalidInput, "image outside algebra");
  }
  const double cutoff = 1e-10 * std::max(scale, 1e-300);
  const Index m = static_cast<Index>(generators.size());
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int d = algebra.block_dim(k);
    if (d == 1) {
      const Index c = algebra.offset(k);
      double gg = 0.0;
      cd hg = 0.0;
      for (Index i = 0; i < m; ++i) {
        const cd g = generators[i].coords()[c];
        gg += std::norm(g);
        hg += images[i].coords()[c] * std::conj(g);
      }
      Matrix b(1, 1);
      b(0, 0) = gg > cutoff * cutoff ? hg / gg : cd(0.0);
      blocks.push_back(b);
      continue;
    }
    Matrix G(d, d * m);
    Matrix H(d, d * m);
    for (Index i = 0; i < m; ++i) {
      G.middleCols(i * d, d) = generators[i].block(k);
      H.middleCols(i * d, d) = images[i].block(k);
    }
    Eigen::BDCSVD<Matrix> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Matrix pinv = Matrix::Zero(d * m, d);
    for (Index j = 0; j < s.size(); ++j) {
      if (s(j) > cutoff) {
        pinv += (svd.matrixV().col(j) / s(j)) * svd.matrixU().col(j).adjoint();
      }
    }
    blocks.push_back(H * pinv);
  }
  MultiplierSolution out(Element::from_blocks(algebra, blocks));
  for (Index i = 0; i < m; ++i) {
    out.consistency = std::max(out.consistency, gap(out.multiplier * generators[i], images[i]));
  }
  return out;
}

}  // namespace

MultiplierSolution solve_left_multiplier(const BlockAlgebra& algebra,
                                         const std::vector<Element>& generators,
                                         const std::vector<Element>& images) {
  return solve_blockwise(algebra, generators, images);
}

MultiplierSolution solve_right_multiplier(const BlockAlgebra& algebra,
                                          const std::vector<Element>& generators,
                                          const std::vector<Element>& images) {
  std::vector<Element> g, h;
  for (const Element& x : generators) g.push_back(x.adjoint());
  for (const Element& x : images) h.push_back(x.adjoint());
  MultiplierSolution s = solve_blockwise(algebra, g, h);
  MultiplierSolution out(s.multiplier.adjoint());
  out.consistency = s.consistency;
  return out;
}

namespace {

UnitExtension extension(const Context& ctx, const Element& m) {
  std::vector<Element> left_images, right_images;
  for (Index p = 0; p < ctx.n(); ++p) {
    const Element a = ctx.basis(p);
    left_images.push_back(ctx.delta(m * a));
    right_images.push_back(ctx.delta(a * m));
  }
  MultiplierSolution l = solve_left_multiplier(ctx.AA, ctx.delta_basis, left_images);
  MultiplierSolution r = solve_right_multiplier(ctx.AA, ctx.delta_basis, right_images);
  UnitExtension out(l.multiplier, r.multiplier);
  out.consistency = std::max(l.consistency, r.consistency);
  return out;
}

VerificationReport extension_checks(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  VerificationReport r;
  const UnitExtension unit = extension(ctx, ctx.one);
  r.add(make_check("extension.unit_left", "Delta~(1) = E, acting on span{Delta(a)z}",
                   gap(unit.left, ctx.qg.E), tol));
  r.add(make_check("extension.unit_right", "Delta~(1) = E, acting on span{z Delta(a)}",
                   gap(unit.right, ctx.qg.E), tol));
  std::mt19937_64 rng(options.seed + 11);
  const Element m = random_element(ctx.qg.A, rng);
  const UnitExtension ext = extension(ctx, m);
  const Element dm = ctx.delta(m);
  r.add(make_check("extension.consistency",
                   "L_m: sum Delta(a_i)z_i -> sum Delta(m a_i)z_i is well defined",
                   std::max({unit.consistency, ext.consistency, gap(ext.left, dm),
                             gap(ext.right, dm)}),
                   tol, "m = 1 and one random m"));
  return r;
}

VerificationReport coassociativity(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  VerificationReport r;
  double on_basis = 0.0;
  for (const Element& d : ctx.delta_basis) {
    on_basis = std::max(on_basis, gap(ctx.left_leg(d), ctx.right_leg(d)));
  }
  r.add(make_check("coassoc.delta", "coassociativity: (Delta(x)id)Delta = (id(x)Delta)Delta",
                   on_basis, tol));

  // Triple-level multiplier recipe: generators (Delta(x)id)(e_p (x) 1) and
  // (id(x)Delta)(1 (x) e_p) span the relevant right ideals.
  const Element& E = ctx.qg.E;
  std::vector<Element> g1, h1, g2, h2;
  for (Index p = 0; p < ctx.n(); ++p) {
    const Element v1 = kron(ctx.basis(p), ctx.one, ctx.AA);
    const Element v2 = kron(ctx.one, ctx.basis(p), ctx.AA);
    g1.push_back(ctx.left_leg(v1));
    h1.push_back(ctx.left_leg(E * v1));
    g2.push_back(ctx.right_leg(v2));
    h2.push_back(ctx.right_leg(E * v2));
  }
  const MultiplierSolution d1 = solve_left_multiplier(ctx.AAA, g1, h1);
  const MultiplierSolution d2 = solve_left_multiplier(ctx.AAA, g2, h2);
  std::ostringstream os;
  os << "recipe consistency " << d1.consistency << " and " << d2.consistency;
  r.add(make_check("coassoc.E", "(Delta(x)id)(E) = (id(x)Delta)(E) as multipliers",
                   std::max({gap(d1.multiplier, d2.multiplier), d1.consistency,
                             d2.consistency}),
                   tol, os.str()));
  return r;
}

VerificationReport base_relations(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  const QuantumGroupoidData& qg = ctx.qg;
  const Element& E = qg.E;
  VerificationReport r;
  std::vector<Element> bs, cs;
  for (Index k = 0; k < qg.iota_B.abstract().total_dim(); ++k) {
    bs.push_back(qg.iota_B(Element::basis(qg.iota_B.abstract(), k)));
  }
  for (Index k = 0; k < qg.iota_C.abstract().total_dim(); ++k) {
    cs.push_back(qg.iota_C(Element::basis(qg.iota_C.abstract(), k)));
  }
  double on_b = 0.0;
  for (const Element& b : bs) {
    const Element db = ctx.delta(b);
    const Element lift = kron(ctx.one, b, ctx.AA);
    on_b = std::max({on_b, gap(E * lift, db), gap(lift * E, db)});
  }
  double on_c = 0.0;
  for (const Element& c : cs) {
    const Element dc = ctx.delta(c);
    const Element lift = kron(c, ctx.one, ctx.AA);
    on_c = std::max({on_c, gap(lift * E, dc), gap(E * lift, dc)});
  }
  double commute = 0.0;
  for (const Element& b : bs) {
    for (const Element& c : cs) {
      commute = std::max(commute, rel(distance(b * c, c * b), (b * c).frobenius_norm()));
    }
  }
  r.add(make_check("base.delta_on_B", "Delta b = E(1(x)b) = (1(x)b)E for b in B", on_b, tol));
  r.add(make_check("base.delta_on_C", "Delta c = (c(x)1)E = E(c(x)1) for c in C", on_c, tol));
  r.add(make_check("base.commute", "the C*-algebras B and C commute", commute, tol));
  return r;
}

VerificationReport invariance(const Context& ctx, Side side, const CheckOptions& options) {
  const double tol = options.tol;
  const QuantumGroupoidData& qg = ctx.qg;
  const bool left = side == Side::Left;
  const Weight& w = left ? qg.phi : qg.psi;
  // Left invariance slices the second leg with phi, right invariance the first with psi.
  const Side weight_side = left ? Side::Right : Side::Left;
  const Side omega_side = left ? Side::Left : Side::Right;
  const std::string prefix = left ? "invariance.left" : "invariance.right";
  VerificationReport r;

  const Subspace target = embedded_span(left ? qg.iota_C : qg.iota_B);
  double member = 0.0;
  for (const Element& d : ctx.delta_basis) {
    member = std::max(member, membership(target, slice(weight_side, w, d)));
  }
  r.add(make_check(prefix + ".membership",
                   left ? "left invariance: (id(x)phi)(Delta a) in M(C)"
                        : "right invariance: (psi(x)id)(Delta a) in M(B)",
                   member, tol));

  std::mt19937_64 rng(options.seed + (left ? 21 : 22));
  double fubini = 0.0;
  double omegabar = std::numeric_limits<double>::infinity();
  double cs = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.samples; ++s) {
    const Element a = random_element(qg.A, rng);
    const Functional omega = random_functional(qg.A, rng);
    const Element da = ctx.delta(a);
    const cd lhs = w(slice(omega_side, omega, da));
    const cd rhs = omega(slice(weight_side, w, da));
    fubini = std::max(fubini, rel(std::abs(lhs - rhs), std::abs(rhs)));

    const Element y = slice(omega_side, omega, da);
    const double ob_lhs = w(y.adjoint() * y).real();
    const double ob_rhs =
        omega.norm() *
        functional_abs(omega)(slice(weight_side, w, ctx.delta(a.adjoint() * a))).real();
    omegabar = std::min(omegabar, (ob_rhs - ob_lhs) / std::max(1.0, std::abs(ob_rhs)));

    const Element x = random_element(ctx.AA, rng);
    const Element b = random_element(qg.A, rng);
    const Element xb = left ? x * kron(ctx.one, b, ctx.AA) : x * kron(b, ctx.one, ctx.AA);
    cs = std::min(cs, cauchy_schwarz_margin(w, xb, da, weight_side));
  }
  r.add(make_check(prefix + ".fubini",
                   left ? "phi((w(x)id)(Delta a)) = w((id(x)phi)(Delta a))"
                        : "psi((id(x)w)(Delta a)) = w((psi(x)id)(Delta a))",
                   fubini, tol));
  r.add(make_check(prefix + ".omegabar",
                   left ? "phi(y*y) <= ||w|| |w|((id(x)phi)(Delta(a*a))), y = (w(x)id)(Delta a)"
                        : "psi(y*y) <= ||w|| |w|((psi(x)id)(Delta(a*a))), y = (id(x)w)(Delta a)",
                   std::max(0.0, -omegabar), 1e-10,
                   "smallest scaled margin " + std::to_string(omegabar)));
  r.add(make_check(prefix + ".cauchy_schwarz",
                   left ? "Cauchy-Schwarz for (id(x)phi)(Delta(a*)x(1(x)b))"
                        : "Cauchy-Schwarz for (psi(x)id)(Delta(a*)x(b(x)1))",
                   std::max(0.0, -cs), 1e-10, "smallest scaled margin " + std::to_string(cs)));
  return r;
}

VerificationReport weight_compatibility(const Context& ctx, const CheckOptions& options) {
  const double tol = options.tol;
  const QuantumGroupoidData& qg = ctx.qg;
  VerificationReport r;
  const Weight mu = induced_weight(qg.base);
  Eigen::CompleteOrthogonalDecomposition<Matrix> to_b(qg.iota_B.image_basis());
  Eigen::CompleteOrthogonalDecomposition<Matrix> to_c(qg.iota_C.image_basis());
  const BlockAlgebra& B = qg.iota_B.abstract();

  double nu_psi = 0.0;
  double mu_phi = 0.0;
  for (Index p = 0; p < ctx.n(); ++p) {
    const Element& d = ctx.delta_basis[p];
    const Element x = ctx.basis(p);
    const Element yb(B, to_b.solve(slice(Side::Left, qg.psi, d).coords()));
    const Element yc(qg.iota_C.abstract(), to_c.solve(slice(Side::Right, qg.phi, d).coords()));
    const cd px = qg.psi(x);
    const cd fx = qg.phi(x);
    nu_psi = std::max(nu_psi, rel(std::abs(qg.base.nu(yb) - px), std::abs(px)));
    mu_phi = std::max(mu_phi, rel(std::abs(mu(yc) - fx), std::abs(fx)));
  }
  r.add(make_check("weights.nu_psi", "nu((psi(x)id)(Delta x)) = psi(x)", nu_psi, tol));
  r.add(make_check("weights.mu_phi", "mu((id(x)phi)(Delta x)) = phi(x)", mu_phi, tol));

  const Subspace b_span = embedded_span(qg.iota_B);
  const Element h = qg.phi.log_density();
  double generator = 0.0;
  for (Index k = 0; k < B.total_dim(); ++k) {
    const Element b = qg.iota_B(Element::basis(B, k));
    const Element comm = h * b - b * h;
    generator = std::max(generator, rel(b_span.distance(comm.coords()), 1.0));
  }
  r.add(make_check("weights.theta_generator",
                   "sigma^phi restricts to B: [log rho_phi, b] in B", generator, tol));

  double member = 0.0;
  double invariant = 0.0;
  for (double t : options.t_samples) {
    for (Index k = 0; k < B.total_dim(); ++k) {
      const Element bk = Element::basis(B, k);
      const Element moved = qg.phi.modular(cd(t), qg.iota_B(bk));
      member = std::max(member, membership(b_span, moved));
      const Element theta(B, to_b.solve(moved.coords()));
      const cd before = qg.base.nu(bk);
      invariant = std::max(invariant, rel(std::abs(qg.base.nu(theta) - before), std::abs(before)));
    }
  }
  r.add(make_check("weights.theta_membership", "sigma^phi_t(B) = B at sampled t", member, tol));
  r.add(make_check("weights.theta_nu_invariance", "nu o theta_t = nu, theta_t = sigma^phi_t|_B",
                   invariant, tol));
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

VerificationReport check_comultiplication(const BlockAlgebra& A, const LinearMap& delta,
                                          const CheckOptions& options) {
  // Only A and Delta are consulted; the rest is filler for the context.
  const BlockAlgebra AA = tensor_algebra(A, A);
  const BlockAlgebra trivial({1});
  QuantumGroupoidData qg{A,
                         delta,
                         Element::unit(AA),
                         BaseData{trivial, trivial, LinearMap::identity(trivial),
                                  Weight::trace(trivial)},
                         SubalgebraEmbedding(trivial, A, Element::unit(A).coords()),
                         SubalgebraEmbedding(trivial, A, Element::unit(A).coords()),
                         Weight::trace(A),
                         Weight::trace(A)};
  return comultiplication(Context(qg), options);
}

VerificationReport check_canonical_idempotent(const QuantumGroupoidData& qg,
                                              const CheckOptions& options) {
  return canonical_idempotent(Context(qg), options);
}

UnitExtension extend_multiplier(const QuantumGroupoidData& qg, const Element& m) {
  return extension(Context(qg), m);
}

Element extend_to_unit(const QuantumGroupoidData& qg) {
  Context ctx(qg);
  UnitExtension u = extension(ctx, ctx.one);
  if (u.consistency > 1e-6) {
    throw Error(ErrorKind::Numerical, "the action of Delta~(1) is not well defined (residual " +
                                          std::to_string(u.consistency) + ")");
  }
  return u.left;
}

VerificationReport check_extension(const QuantumGroupoidData& qg, const CheckOptions& options) {
  return extension_checks(Context(qg), options);
}

VerificationReport check_coassociativity(const QuantumGroupoidData& qg,
                                         const CheckOptions& options) {
  return coassociativity(Context(qg), options);
}

VerificationReport check_base_relations(const QuantumGroupoidData& qg,
                                        const CheckOptions& options) {
  return base_relations(Context(qg), options);
}

VerificationReport check_invariance(const QuantumGroupoidData& qg, Side side,
                                    const CheckOptions& options) {
  return invariance(Context(qg), side, options);
}

VerificationReport check_weight_compatibility(const QuantumGroupoidData& qg,
                                              const CheckOptions& options) {
  return weight_compatibility(Context(qg), options);
}

Element delta_left_leg(const QuantumGroupoidData& qg, const Element& x) {
  return Context(qg).left_leg(x);
}

Element delta_right_leg(const QuantumGroupoidData& qg, const Element& x) {
  return Context(qg).right_leg(x);
}

VerificationReport verify_quantum_groupoid(const QuantumGroupoidData& qg,
                                           const CheckOptions& options) {
  const double tol = options.tol;
  VerificationReport report;

  std::optional<Context> ctx;
  guarded(report, "structure.shapes", "data (A, Delta, E) have consistent shapes", tol, [&] {
    ctx.emplace(qg);
    report.add(make_verdict("structure.shapes", "data (A, Delta, E) have consistent shapes",
                            true, 0.0, tol));
  });

  guarded(report, "embedding.error", "B and C embed unitally in A", tol, [&] {
    if (qg.iota_B.host() != qg.A || qg.iota_C.host() != qg.A) {
      throw Error(ErrorKind::InvalidInput, "embeddings must land in A");
    }
    if (qg.iota_B.abstract() != qg.base.B || qg.iota_C.abstract() != qg.base.C) {
      throw Error(ErrorKind::InvalidInput, "embeddings must start from the base algebras");
    }
    report.append(qg.iota_B.check(tol, "embedding.iota_B"));
    report.append(qg.iota_C.check(tol, "embedding.iota_C"));
  });
  guarded(report, "delta.error", "Delta is a *-homomorphism", tol, [&] {
    report.append(check_star_homomorphism(qg.delta, false, tol, "delta", false));
  });

  guarded(report, "kms.error", "nu, phi, psi are KMS weights", tol, [&] {
    report.append(check_kms(qg.base.nu, options, "kms.nu"));
    report.append(check_kms(qg.phi, options, "kms.phi"));
    report.append(check_kms(qg.psi, options, "kms.psi"));
  });

  std::optional<Element> base_E;
  guarded(report, "sepid.solve", "separability idempotent for (B, nu, R)", tol, [&] {
    report.append(check_star_homomorphism(qg.base.R, true, tol, "sepid.R"));
    const SolveResult solved = solve_separability_idempotent(qg.base, tol);
    const double residual = std::max(
        {solved.linear_residual, solved.selfadjoint_residual, solved.idempotent_residual});
    report.add(make_verdict("sepid.solve", "separability idempotent for (B, nu, R) exists",
                            solved.solved(), residual, tol, solved.diagnostic));
    if (!solved.solved()) return;
    base_E = solved.candidate;
    report.append(check_separability_conditions(qg.base, *base_E, tol, "sepid.def"));
    const Matrix ib = qg.iota_B.image_basis();
    const Matrix ic = qg.iota_C.image_basis();
    const Element embedded = apply_tensor_maps(*base_E, &ib, &ic, tensor_algebra(qg.A, qg.A));
    report.add(make_check("sepid.embedding", "(iota_B (x) iota_C)(E_base) = E",
                          gap(embedded, qg.E), tol));
  });

  if (ctx) {
    guarded(report, "comult.error", "comultiplication axioms", tol,
            [&] { report.append(comultiplication(*ctx, options)); });
    guarded(report, "idempotent.error", "canonical idempotent axioms", tol,
            [&] { report.append(canonical_idempotent(*ctx, options)); });
    guarded(report, "extension.error", "Delta~(1) = E", tol,
            [&] { report.append(extension_checks(*ctx, options)); });
    guarded(report, "coassoc.error", "coassociativity", tol,
            [&] { report.append(coassociativity(*ctx, options)); });
    guarded(report, "base.error", "Delta on B and C", tol,
            [&] { report.append(base_relations(*ctx, options)); });
    guarded(report, "invariance.left.error", "left invariance of phi", tol,
            [&] { report.append(invariance(*ctx, Side::Left, options)); });
    guarded(report, "invariance.right.error", "right invariance of psi", tol,
            [&] { report.append(invariance(*ctx, Side::Right, options)); });
    guarded(report, "weights.error", "weight compatibility", tol,
            [&] { report.append(weight_compatibility(*ctx, options)); });
  }

  guarded(report, "sepid.properties", "separability triple calculus", tol, [&] {
    if (!base_E) {
      report.add(make_verdict("sepid.properties", "separability triple calculus", false,
                              std::numeric_limits<double>::infinity(), tol,
                              "skipped: no separability idempotent"));
      return;
    }
    const SeparabilityTriple triple = SeparabilityTriple::build(qg.base, *base_E, tol);
    report.append(check_sepid_properties(triple, options, "sepid"));
  });
  return report;
}

}  // namespace qgl
