#include "qgl/linear_map.hpp"

#include <algorithm>
#include <optional>

#include "qgl/error.hpp"

namespace qgl {

LinearMap::LinearMap(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix,
                     MapFlags declared)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(std::move(matrix)),
      flags_(declared) {
  if (matrix_.rows() != codomain_.total_dim() || matrix_.cols() != domain_.total_dim()) {
    throw Error(ErrorKind::InvalidInput,
                "linear map matrix is " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) + ", expected " +
                    std::to_string(codomain_.total_dim()) + "x" +
                    std::to_string(domain_.total_dim()));
  }
}

LinearMap LinearMap::verified(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix,
                              MapFlags declared, double tol) {
  LinearMap map(std::move(domain), std::move(codomain), std::move(matrix), declared);
  const VerificationReport report = verify_flags(map, tol, "map");
  if (!report.verdict()) {
    std::string failed;
    for (const Check* c : report.failures()) {
      if (!failed.empty()) failed += ", ";
      failed += c->id;
    }
    throw Error(ErrorKind::InvalidInput, "declared map flags do not hold: " + failed);
  }
  return map;
}

LinearMap LinearMap::identity(const BlockAlgebra& algebra) {
  const Index n = algebra.total_dim();
  MapFlags flags;
  flags.multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  flags.injective = true;
  return LinearMap(algebra, algebra, Matrix::Identity(n, n), flags);
}

LinearMap LinearMap::from_function(const BlockAlgebra& domain, const BlockAlgebra& codomain,
                                   const std::function<Element(const Element&)>& fn,
                                   MapFlags declared) {
  Matrix m(codomain.total_dim(), domain.total_dim());
  for (Index p = 0; p < domain.total_dim(); ++p) {
    Element image = fn(Element::basis(domain, p));
    if (image.algebra() != codomain) {
      throw Error(ErrorKind::InvalidInput, "function maps outside the stated codomain");
    }
    m.col(p) = image.coords();
  }
  return LinearMap(domain, codomain, std::move(m), declared);
}

Element LinearMap::operator()(const Element& x) const {
  if (x.algebra() != domain_) {
    throw Error(ErrorKind::InvalidInput, "argument is not in the domain of the map");
  }
  return Element(codomain_, matrix_ * x.coords());
}

LinearMap LinearMap::after(const LinearMap& inner) const {
  if (inner.codomain_ != domain_) {
    throw Error(ErrorKind::InvalidInput, "composition of incompatible maps");
  }
  return LinearMap(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

LinearMap LinearMap::inverse() const {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorKind::Numerical, "non-square map has no inverse");
  }
  Eigen::FullPivLU<Matrix> lu(matrix_);
  if (!lu.isInvertible()) throw Error(ErrorKind::Numerical, "map is not invertible");
  MapFlags flags = flags_;
  return LinearMap(codomain_, domain_, lu.inverse(), flags);
}

// ---------------------------------------------------------------------------

namespace {

/// e_p e_q as a basis coordinate, or nullopt when the product vanishes.
std::optional<Index> basis_product(const BlockAlgebra& alg, Index p, Index q) {
  auto [k1, i1, j1] = alg.locate(p);
  auto [k2, i2, j2] = alg.locate(q);
  if (k1 != k2 || j1 != i2) return std::nullopt;
  return alg.index(k1, i1, j2);
}

/// e_p^* as a basis coordinate.
Index basis_adjoint(const BlockAlgebra& alg, Index p) {
  auto [k, i, j] = alg.locate(p);
  return alg.index(k, j, i);
}

}  // namespace

VerificationReport check_star_homomorphism(const BlockAlgebra& domain,
                                           const ElementFunction& map, bool anti,
                                           double tol, const std::string& id_prefix,
                                           bool unital) {
  const Index n = domain.total_dim();
  std::vector<Element> images;
  images.reserve(n);
  for (Index p = 0; p < n; ++p) images.push_back(map(Element::basis(domain, p)));
  const Element image_of_zero = map(Element::zero(domain));

  double linear = image_of_zero.frobenius_norm();
  const cd i_unit(0.0, 1.0);
  for (Index p = 0; p < n; ++p) {
    const Element x = Element::basis(domain, p);
    const Element y = Element::basis(domain, (p + 1) % n);
    const Element lhs = map(i_unit * x + y);
    const Element rhs = i_unit * images[p] + images[(p + 1) % n];
    linear = std::max(linear, distance(lhs, rhs));
  }

  double mult = 0.0;
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      const auto r = basis_product(domain, p, q);
      const Element& product_image = r ? images[*r] : image_of_zero;
      const Element rhs = anti ? images[q] * images[p] : images[p] * images[q];
      mult = std::max(mult, distance(product_image, rhs));
    }
  }

  double star = 0.0;
  for (Index p = 0; p < n; ++p) {
    star = std::max(star, distance(images[basis_adjoint(domain, p)], images[p].adjoint()));
  }


  VerificationReport report;
  report.add(make_check(id_prefix + ".linear", "linearity of the map", linear, tol));
  if (anti) {
    report.add(make_check(id_prefix + ".anti_multiplicative",
                          "T(xy) = T(y)T(x) on basis pairs", mult, tol));
  } else {
    report.add(make_check(id_prefix + ".multiplicative", "T(xy) = T(x)T(y) on basis pairs",
                          mult, tol));
  }
  report.add(make_check(id_prefix + ".star", "T(x*) = T(x)* on the basis", star, tol));
  if (unital) {
    const Element one = map(Element::unit(domain));
    report.add(make_check(id_prefix + ".unital", "T(1) = 1",
                          distance(one, Element::unit(one.algebra())), tol));
  }
  return report;
}

VerificationReport check_star_homomorphism(const LinearMap& map, bool anti, double tol,
                                           const std::string& id_prefix, bool unital) {
  return check_star_homomorphism(
      map.domain(), [&map](const Element& x) { return map(x); }, anti, tol, id_prefix,
      unital);
}

VerificationReport verify_flags(const LinearMap& map, double tol,
                                const std::string& id_prefix) {
  const MapFlags& f = map.flags();
  VerificationReport full;
  if (f.multiplicative || f.anti_multiplicative || f.star_preserving || f.unital) {
    full = check_star_homomorphism(map, f.anti_multiplicative, tol, id_prefix);
  }
  VerificationReport report;
  for (const Check& c : full.checks()) {
    const bool wanted = (c.id.ends_with(".multiplicative") && f.multiplicative) ||
                        (c.id.ends_with(".anti_multiplicative") && f.anti_multiplicative) ||
                        (c.id.ends_with(".star") && f.star_preserving) ||
                        (c.id.ends_with(".unital") && f.unital);
    if (wanted) report.add(c);
  }
  if (f.injective) {
    Eigen::JacobiSVD<Matrix> svd(map.matrix());
    const auto& s = svd.singularValues();
    const double smallest = s.size() == 0 ? 0.0 : s(s.size() - 1);
    const double largest = s.size() == 0 ? 0.0 : s(0);
    const bool ok = map.matrix().rows() >= map.matrix().cols() &&
                    smallest > tol * std::max(1.0, largest);
    report.add(make_verdict(id_prefix + ".injective", "T has trivial kernel", ok,
                            ok ? 0.0 : 1.0, tol,
                            "smallest singular value " + std::to_string(smallest)));
  }
  return report;
}

// ---------------------------------------------------------------------------

SubalgebraEmbedding::SubalgebraEmbedding(BlockAlgebra abstract, BlockAlgebra host,
                                         Matrix iota)
    : iota_(std::move(abstract), std::move(host), std::move(iota),
            MapFlags{true, false, true, true, true}) {}

VerificationReport SubalgebraEmbedding::check(double tol,
                                              const std::string& id_prefix) const {
  VerificationReport report = verify_flags(iota_, tol, id_prefix);
  double isometry = 0.0;
  for (Index p = 0; p < abstract().total_dim(); ++p) {
    const Element x = Element::basis(abstract(), p);
    isometry = std::max(isometry, std::abs(iota_(x).operator_norm() - x.operator_norm()));
  }
  report.add(make_check(id_prefix + ".isometric", "||iota(x)|| = ||x|| on the basis",
                        isometry, tol));
  return report;
}

}  // namespace qgl
