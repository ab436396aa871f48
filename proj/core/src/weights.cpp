#include "qgl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qgl/error.hpp"

namespace qgl {

namespace {

constexpr cd kI(0.0, 1.0);

double scale_of(double v) { return std::max(1.0, std::abs(v)); }

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (m + m.adjoint()));
}

}  // namespace

Vector values_of_rep(const Element& rep) {
  const BlockAlgebra& alg = rep.algebra();
  Vector v(alg.total_dim());
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int d = alg.block_dim(k);
    BlockView(v.data() + alg.offset(k), d, d) = rep.block(k).transpose();
  }
  return v;
}

Element rep_of_values(const BlockAlgebra& algebra, const Vector& values) {
  if (values.size() != algebra.total_dim()) {
    throw Error(ErrorKind::InvalidInput, "functional values do not match the algebra");
  }
  Vector c(algebra.total_dim());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int d = algebra.block_dim(k);
    BlockView(c.data() + algebra.offset(k), d, d) =
        ConstBlockView(values.data() + algebra.offset(k), d, d).transpose();
  }
  return Element(algebra, std::move(c));
}

double min_eigenvalue(const Element& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.algebra().num_blocks(); ++k) {
    best = std::min(best, hermitian_eigen(x.block(k)).eigenvalues().minCoeff());
  }
  return best;
}

// ---------------------------------------------------------------------------

Weight::Weight(BlockAlgebra algebra, Element density)
    : algebra_(std::move(algebra)), density_(std::move(density)) {
  if (density_.algebra() != algebra_) {
    throw Error(ErrorKind::InvalidInput, "density lives in a different algebra");
  }
  const double scale = std::max(1.0, density_.frobenius_norm());
  if (distance(density_, density_.adjoint()) > 1e-10 * scale) {
    throw Error(ErrorKind::InvalidInput, "weight density is not Hermitian");
  }
  density_ = 0.5 * (density_ + density_.adjoint());
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    auto es = hermitian_eigen(density_.block(k));
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
      throw Error(ErrorKind::InvalidInput,
                  "weight is not faithful: density block " + std::to_string(k) +
                      " has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
    eigvecs_.push_back(es.eigenvectors());
    eigvals_.push_back(es.eigenvalues());
  }
  values_ = values_of_rep(density_);
}

Weight Weight::trace(const BlockAlgebra& algebra, double scale) {
  return Weight(algebra, cd(scale) * Element::unit(algebra));
}

Weight Weight::from_values(const BlockAlgebra& algebra, const Vector& values) {
  return Weight(algebra, rep_of_values(algebra, values));
}

cd Weight::operator()(const Element& x) const {
  if (x.algebra() != algebra_) {
    throw Error(ErrorKind::InvalidInput, "weight applied outside its algebra");
  }
  return values_.transpose() * x.coords();
}

Element Weight::density_power(cd w) const {
  std::vector<Matrix> blocks;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    Vector powers = eigvals_[k].cast<cd>().unaryExpr([w](cd l) { return std::exp(w * std::log(l)); });
    blocks.push_back(eigvecs_[k] * powers.asDiagonal() * eigvecs_[k].adjoint());
  }
  return Element::from_blocks(algebra_, blocks);
}

Element Weight::log_density() const {
  std::vector<Matrix> blocks;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    Vector logs = eigvals_[k].array().log().cast<cd>();
    blocks.push_back(eigvecs_[k] * logs.asDiagonal() * eigvecs_[k].adjoint());
  }
  return Element::from_blocks(algebra_, blocks);
}

Element Weight::modular(cd z, const Element& x) const {
  if (x.algebra() != algebra_) {
    throw Error(ErrorKind::InvalidInput, "modular group applied outside its algebra");
  }
  return density_power(kI * z) * x * density_power(-kI * z);
}

Matrix Weight::modular_matrix(cd z) const {
  const Element left = density_power(kI * z);
  const Element right = density_power(-kI * z);
  const Index n = algebra_.total_dim();
  Matrix m(n, n);
  for (Index p = 0; p < n; ++p) m.col(p) = (left * Element::basis(algebra_, p) * right).coords();
  return m;
}

double Weight::min_eigenvalue() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ev : eigvals_) best = std::min(best, ev.minCoeff());
  return best;
}

bool Weight::is_tracial(double tol) const {
  for (const auto& ev : eigvals_) {
    if (ev.maxCoeff() - ev.minCoeff() > tol * std::max(1.0, ev.maxCoeff())) return false;
  }
  return true;
}

Weight tensor_weight(const Weight& w1, const Weight& w2) {
  const BlockAlgebra target = tensor_algebra(w1.algebra(), w2.algebra());
  return Weight(target, kron(w1.density(), w2.density(), target));
}

// ---------------------------------------------------------------------------

Functional::Functional(BlockAlgebra algebra, Element rep)
    : algebra_(std::move(algebra)), rep_(std::move(rep)) {
  if (rep_.algebra() != algebra_) {
    throw Error(ErrorKind::InvalidInput, "functional representative lives elsewhere");
  }
  values_ = values_of_rep(rep_);
}

Functional Functional::from_values(const BlockAlgebra& algebra, const Vector& values) {
  return Functional(algebra, rep_of_values(algebra, values));
}

cd Functional::operator()(const Element& x) const {
  if (x.algebra() != algebra_) {
    throw Error(ErrorKind::InvalidInput, "functional applied outside its algebra");
  }
  return values_.transpose() * x.coords();
}

double Functional::norm() const {
  double total = 0.0;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(rep_.block(k));
    total += svd.singularValues().sum();
  }
  return total;
}

Functional functional_abs(const Functional& omega) {
  const BlockAlgebra& alg = omega.algebra();
  std::vector<Matrix> blocks;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const Matrix tau = omega.rep().block(k);
    auto es = hermitian_eigen(tau * tau.adjoint());
    Vector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<cd>();
    blocks.push_back(es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint());
  }
  return Functional(alg, Element::from_blocks(alg, blocks));
}

// ---------------------------------------------------------------------------

Element slice(Side side, const Vector& functional_values, const Element& x) {
  const BlockAlgebra& alg = x.algebra();
  if (!alg.is_tensor()) throw Error(ErrorKind::InvalidInput, "slice of a non-tensor element");
  const Matrix coeffs = tensor_coefficients(x);
  if (side == Side::Left) {
    if (functional_values.size() != coeffs.rows()) {
      throw Error(ErrorKind::InvalidInput, "slice functional does not fit the left factor");
    }
    return Element(alg.right_factor(), coeffs.transpose() * functional_values);
  }
  if (functional_values.size() != coeffs.cols()) {
    throw Error(ErrorKind::InvalidInput, "slice functional does not fit the right factor");
  }
  return Element(alg.left_factor(), coeffs * functional_values);
}

// ---------------------------------------------------------------------------

VerificationReport check_kms(const Weight& w, const CheckOptions& options,
                             const std::string& id_prefix) {
  const BlockAlgebra& alg = w.algebra();
  std::mt19937_64 rng(options.seed);
  std::vector<Element> samples;
  for (Index p = 0; p < alg.total_dim(); ++p) samples.push_back(Element::basis(alg, p));
  for (int s = 0; s < options.samples; ++s) samples.push_back(random_element(alg, rng));

  const Matrix half = w.modular_matrix(cd(0.0, 0.5));
  double kms = 0.0;
  for (const auto& a : samples) {
    const Element sa(alg, half * a.coords());
    const cd lhs = w(a.adjoint() * a);
    const cd rhs = w(sa * sa.adjoint());
    kms = std::max(kms, std::abs(lhs - rhs) / scale_of(std::abs(lhs)));
  }

  double invariance = 0.0;
  for (double t : options.t_samples) {
    const Matrix st = w.modular_matrix(t);
    for (const auto& x : samples) {
      const cd lhs = w(Element(alg, st * x.coords()));
      const cd rhs = w(x);
      invariance = std::max(invariance, std::abs(lhs - rhs) / scale_of(std::abs(rhs)));
    }
  }

  const Matrix minus_i = w.modular_matrix(cd(0.0, -1.0));
  double analytic = 0.0;
  for (int s = 0; s < std::max(options.samples, 4); ++s) {
    const Element a = random_element(alg, rng);
    const Element x = random_element(alg, rng);
    const cd lhs = w(a * x);
    const cd rhs = w(x * Element(alg, minus_i * a.coords()));
    analytic = std::max(analytic, std::abs(lhs - rhs) / scale_of(std::abs(lhs)));
  }

  VerificationReport r;
  r.add(make_check(id_prefix + ".identity", "KMS weight: psi(a*a) = psi(sigma_{i/2}(a) sigma_{i/2}(a)*)",
                   kms, options.tol));
  r.add(make_check(id_prefix + ".invariance", "KMS weight: psi o sigma_t = psi", invariance,
                   options.tol));
  r.add(make_check(id_prefix + ".analytic_generator",
                   "KMS lemma: psi(ax) = psi(x sigma_{-i}(a))", analytic, options.tol));
  return r;
}

VerificationReport check_modular_group(const Weight& w, const CheckOptions& options,
                                       const std::string& id_prefix) {
  const BlockAlgebra& alg = w.algebra();
  std::mt19937_64 rng(options.seed + 17);
  std::vector<Element> xs;
  for (int s = 0; s < std::max(options.samples, 2); ++s) xs.push_back(random_element(alg, rng));

  double group = 0.0;
  const std::vector<double>& ts = options.t_samples;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const cd z(ts[i], 0.5 * ts[(i + 1) % ts.size()]);
    const cd v(ts[(i + 2) % ts.size()], -0.25 * ts[i]);
    for (const auto& x : xs) {
      const Element lhs = w.modular(z, w.modular(v, x));
      const Element rhs = w.modular(z + v, x);
      group = std::max(group, distance(lhs, rhs) / std::max(1.0, rhs.frobenius_norm()));
    }
  }

  double unitary = 0.0;
  for (double t : ts) {
    for (const auto& x : xs) {
      const Element sx = w.modular(t, x);
      unitary = std::max(unitary, std::abs(sx.operator_norm() - x.operator_norm()) /
                                      std::max(1.0, x.operator_norm()));
      unitary = std::max(unitary, distance(w.modular(t, x.adjoint()), sx.adjoint()) /
                                      std::max(1.0, x.frobenius_norm()));
    }
  }

  double adjoint_rule = 0.0;
  for (Index p = 0; p < alg.total_dim(); ++p) {
    const Element x = Element::basis(alg, p);
    const Element lhs = w.modular(cd(0.0, 0.5), x).adjoint();
    const Element rhs = w.modular(cd(0.0, -0.5), x.adjoint());
    adjoint_rule = std::max(adjoint_rule, distance(lhs, rhs) / std::max(1.0, rhs.frobenius_norm()));
  }

  VerificationReport r;
  r.add(make_check(id_prefix + ".group_law", "modular group: sigma_z o sigma_w = sigma_{z+w}",
                   group, options.tol));
  r.add(make_check(id_prefix + ".unitary", "modular group: sigma_t isometric *-automorphism",
                   unitary, options.tol));
  r.add(make_check(id_prefix + ".adjoint_rule", "modular group: sigma_{i/2}(x)* = sigma_{-i/2}(x*)",
                   adjoint_rule, options.tol));
  return r;
}

// ---------------------------------------------------------------------------

GNSData::GNSData(Weight weight) : weight_(std::move(weight)) {
  const BlockAlgebra& alg = weight_.algebra();
  const Index n = alg.total_dim();
  gram_ = Matrix::Zero(n, n);
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int d = alg.block_dim(k);
    const Matrix rho_t = weight_.density().block(k).transpose();
    for (int i = 0; i < d; ++i) {
      gram_.block(alg.index(k, i, 0), alg.index(k, i, 0), d, d) = rho_t;
    }
  }
  auto es = hermitian_eigen(gram_);
  const Eigen::VectorXd g = es.eigenvalues();
  gram_sqrt_ = es.eigenvectors() * g.cwiseSqrt().cast<cd>().asDiagonal() *
               es.eigenvectors().adjoint();
  gram_inv_sqrt_ = es.eigenvectors() * g.cwiseSqrt().cwiseInverse().cast<cd>().asDiagonal() *
                   es.eigenvectors().adjoint();

  const Element rho = weight_.density();
  const Element rho_inv = weight_.density_power(-1.0);
  nabla_.resize(n, n);
  for (Index p = 0; p < n; ++p) nabla_.col(p) = (rho * Element::basis(alg, p) * rho_inv).coords();

  auto hs = hermitian_eigen(gram_sqrt_ * nabla_ * gram_inv_sqrt_);
  hermitian_eigvecs_ = hs.eigenvectors();
  hermitian_eigvals_ = hs.eigenvalues();
}

Matrix GNSData::pi(const Element& a) const {
  const BlockAlgebra& alg = weight_.algebra();
  const Index n = alg.total_dim();
  Matrix m(n, n);
  for (Index p = 0; p < n; ++p) m.col(p) = (a * Element::basis(alg, p)).coords();
  return m;
}

Matrix GNSData::adjoint(const Matrix& op) const {
  return gram_.ldlt().solve(op.adjoint() * gram_);
}

Vector GNSData::J(const Vector& v) const {
  const BlockAlgebra& alg = weight_.algebra();
  const Element a(alg, v);
  return (weight_.density_power(0.5) * a.adjoint() * weight_.density_power(-0.5)).coords();
}

Matrix GNSData::nabla_power(cd z) const {
  Vector powers = hermitian_eigvals_.cast<cd>().unaryExpr(
      [z](cd h) { return std::exp(z * std::log(h)); });
  return gram_inv_sqrt_ * hermitian_eigvecs_ * powers.asDiagonal() *
         hermitian_eigvecs_.adjoint() * gram_sqrt_;
}

GNSData gns(const Weight& w) { return GNSData(w); }

VerificationReport check_gns(const GNSData& data, const CheckOptions& options,
                             const std::string& id_prefix) {
  const Weight& w = data.weight();
  const BlockAlgebra& alg = w.algebra();
  const Index n = alg.total_dim();
  std::vector<Element> basis;
  for (Index p = 0; p < n; ++p) basis.push_back(Element::basis(alg, p));
  const double scale = std::max(1.0, w.density().operator_norm());

  double inner = 0.0;
  double pi_rule = 0.0;
  double antiunitary = 0.0;
  for (const auto& a : basis) {
    const Matrix pa = data.pi(a);
    for (const auto& b : basis) {
      inner = std::max(inner, std::abs(data.inner(data.lambda(a), data.lambda(b)) -
                                       w(b.adjoint() * a)) / scale);
      pi_rule = std::max(pi_rule, (pa * data.lambda(b) - data.lambda(a * b)).norm());
      const cd lhs = data.inner(data.J(data.lambda(a)), data.J(data.lambda(b)));
      const cd rhs = data.inner(data.lambda(b), data.lambda(a));
      antiunitary = std::max(antiunitary, std::abs(lhs - rhs) / scale);
    }
  }

  double j_rule = 0.0;
  double involution = 0.0;
  double tomita = 0.0;
  const Matrix nabla_half = data.nabla_power(0.5);
  for (const auto& x : basis) {
    const Vector lhs = data.J(data.lambda(x));
    const Vector rhs = data.lambda(w.modular(cd(0.0, 0.5), x).adjoint());
    j_rule = std::max(j_rule, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    involution = std::max(involution, (data.J(lhs) - data.lambda(x)).norm());
    tomita = std::max(tomita, (data.J(nabla_half * data.lambda(x)) -
                               data.lambda(x.adjoint())).norm());
  }

  double nabla_rule = 0.0;
  for (double t : options.t_samples) {
    const Matrix nt = data.nabla_power(cd(0.0, t));
    for (const auto& a : basis) {
      const Vector rhs = data.lambda(w.modular(t, a));
      nabla_rule = std::max(nabla_rule, (nt * data.lambda(a) - rhs).norm());
    }
  }
  // The Hermitian form of nabla has to be positive definite for nabla to be positive.
  const Matrix& g = data.gram();
  const Matrix gn = g * data.nabla();
  double positivity = (gn - gn.adjoint()).norm() / std::max(1.0, gn.norm());
  const double min_ev = hermitian_eigen(gn).eigenvalues().minCoeff();
  if (!(min_ev > 0.0)) positivity = std::max(positivity, 1.0 - min_ev);

  double lemma = 0.0;
  for (const auto& a : basis) {
    const Matrix op = data.adjoint(data.pi(w.modular(cd(0.0, 0.5), a)));
    for (const auto& x : basis) {
      const Vector rhs = data.J(op * data.J(data.lambda(x)));
      const Vector lhs = data.lambda(x * a);
      lemma = std::max(lemma, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
    }
  }

  VerificationReport r;
  const double tol = options.tol;
  r.add(make_check(id_prefix + ".inner_product", "GNS: <Lambda(a), Lambda(b)> = psi(b*a)", inner, tol));
  r.add(make_check(id_prefix + ".pi", "GNS: pi(a) Lambda(b) = Lambda(ab)", pi_rule, tol));
  r.add(make_check(id_prefix + ".J", "modular conjugation: J Lambda(x) = Lambda(sigma_{i/2}(x)*)",
                   j_rule, tol));
  r.add(make_check(id_prefix + ".J_involution", "modular conjugation: J^2 = 1", involution, tol));
  r.add(make_check(id_prefix + ".J_antiunitary", "modular conjugation: <Ju, Jv> = <v, u>",
                   antiunitary, tol));
  r.add(make_check(id_prefix + ".nabla", "modular operator: nabla^{it} Lambda(a) = Lambda(sigma_t(a))",
                   nabla_rule, tol));
  r.add(make_check(id_prefix + ".nabla_positive", "modular operator: nabla positive", positivity,
                   tol));
  r.add(make_check(id_prefix + ".tomita", "Tomita: J nabla^{1/2} Lambda(x) = Lambda(x*)", tomita,
                   tol));
  r.add(make_check(id_prefix + ".lambda_xa",
                   "modular lemma: Lambda(xa) = J pi(sigma_{i/2}(a))* J Lambda(x)", lemma, tol));
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport check_tensor_weight(const Weight& w1, const Weight& w2,
                                       const CheckOptions& options,
                                       const std::string& id_prefix) {
  const Weight w12 = tensor_weight(w1, w2);
  const BlockAlgebra& alg = w12.algebra();
  std::mt19937_64 rng(options.seed + 31);

  double modular = 0.0;
  for (double t : options.t_samples) {
    for (int s = 0; s < options.samples; ++s) {
      const Element a = random_element(w1.algebra(), rng);
      const Element b = random_element(w2.algebra(), rng);
      const Element lhs = w12.modular(t, kron(a, b, alg));
      const Element rhs = kron(w1.modular(t, a), w2.modular(t, b), alg);
      modular = std::max(modular, distance(lhs, rhs) / std::max(1.0, rhs.frobenius_norm()));
    }
  }

  double fubini = 0.0;
  double positivity = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const Element x = random_element(alg, rng);
    const cd total = w12(x);
    const cd via_left = w2(slice(Side::Left, w1, x));
    const cd via_right = w1(slice(Side::Right, w2, x));
    fubini = std::max({fubini, std::abs(total - via_left) / scale_of(std::abs(total)),
                       std::abs(total - via_right) / scale_of(std::abs(total))});
    const Element pos = x.adjoint() * x;
    const Element sl = slice(Side::Left, w1, pos);
    positivity = std::max(positivity, -min_eigenvalue(sl) / std::max(1.0, sl.operator_norm()));
  }

  VerificationReport r;
  r.add(make_check(id_prefix + ".modular", "tensor weight: sigma = sigma^1 (x) sigma^2", modular,
                   options.tol));
  r.add(make_check(id_prefix + ".fubini", "slice maps: (psi (x) phi)(x) = phi((psi (x) id)(x))",
                   fubini, options.tol));
  r.add(make_check(id_prefix + ".positivity", "slice maps: x >= 0 implies (psi (x) id)(x) >= 0",
                   std::max(0.0, positivity), options.tol));
  return r;
}

// ---------------------------------------------------------------------------

double cauchy_schwarz_margin(const Weight& psi, const Element& x, const Element& y,
                             Side side) {
  const Element p = slice(side, psi, y.adjoint() * x);
  const Element lhs = p.adjoint() * p;
  const Element yy = slice(side, psi, y.adjoint() * y);
  const Element rhs = cd(yy.operator_norm()) * slice(side, psi, x.adjoint() * x);
  return min_eigenvalue(rhs - lhs) / std::max(1.0, rhs.operator_norm());
}

double omegabar_margin(const Functional& omega, const Element& a) {
  const double lhs = std::norm(omega(a));
  const double rhs = omega.norm() * functional_abs(omega)(a.adjoint() * a).real();
  return (rhs - lhs) / std::max(1.0, std::abs(rhs));
}

double omegabar_slice_margin(const Functional& omega, const Element& z) {
  const Element p = slice(Side::Right, omega, z);
  const Element lhs = p.adjoint() * p;
  const Element rhs =
      cd(omega.norm()) * slice(Side::Right, functional_abs(omega), z.adjoint() * z);
  return min_eigenvalue(rhs - lhs) / std::max(1.0, rhs.operator_norm());
}

}  // namespace qgl
