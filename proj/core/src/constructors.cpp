#include "qgl/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "qgl/error.hpp"
#include "qgl/span.hpp"

namespace qgl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_valid(const FiniteGroupoid& g) {
  const VerificationReport r = validate_groupoid(g);
  if (!r.verdict()) {
    const Check* c = r.failures().front();
    throw Error(ErrorKind::InvalidInput, "not a groupoid: " + c->id + ": " + c->detail);
  }
}

MapFlags homomorphism_flags(bool unital) {
  MapFlags f;
  f.multiplicative = true;
  f.star_preserving = true;
  f.unital = unital;
  return f;
}

BlockAlgebra commutative(Index n) { return BlockAlgebra(std::vector<int>(n, 1)); }

QuantumGroupoidData assemble_function_model(const FiniteGroupoid& g,
                                            const std::vector<double>& nu_values) {
  require_valid(g);
  const int n = g.size();
  const int nu = static_cast<int>(g.units().size());
  if (static_cast<int>(nu_values.size()) != nu) {
    throw Error(ErrorKind::InvalidInput, "nu needs one value per unit");
  }
  const BlockAlgebra A = commutative(n);
  const BlockAlgebra AA = tensor_algebra(A, A);
  const BlockAlgebra B = commutative(nu);
  const BlockAlgebra C = commutative(nu);

  std::vector<int> unit_pos(n, -1);
  for (int k = 0; k < nu; ++k) unit_pos[g.units()[k]] = k;

  Matrix delta = Matrix::Zero(AA.total_dim(), n);
  Vector e = Vector::Zero(AA.total_dim());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (!g.composable(p, q)) continue;
      delta(AA.tensor_index(p, q), g.product(p, q)) = 1.0;
      e(AA.tensor_index(p, q)) = 1.0;
    }
  }
  Matrix iota_b = Matrix::Zero(n, nu);
  Matrix iota_c = Matrix::Zero(n, nu);
  for (int p = 0; p < n; ++p) {
    iota_b(p, unit_pos[g.source(p)]) = 1.0;
    iota_c(p, unit_pos[g.target(p)]) = 1.0;
  }
  MapFlags r_flags = homomorphism_flags(true);
  r_flags.anti_multiplicative = true;
  r_flags.injective = true;
  Vector nu_density(nu);
  for (int k = 0; k < nu; ++k) nu_density(k) = nu_values[k];

  return QuantumGroupoidData{
      A,
      LinearMap(A, AA, delta, homomorphism_flags(false)),
      Element(AA, e),
      BaseData{B, C, LinearMap(B, C, Matrix::Identity(nu, nu), r_flags),
               Weight(B, Element(B, nu_density))},
      SubalgebraEmbedding(B, A, iota_b),
      SubalgebraEmbedding(C, A, iota_c),
      Weight::trace(A),
      Weight::trace(A)};
}

// ---------------------------------------------------------------------------

/// Characters of an abelian group given by its table on local indices 0..m-1.
std::vector<std::vector<cd>> characters(const std::vector<std::vector<int>>& table, int identity) {
  const int m = static_cast<int>(table.size());
  auto closure = [&](const std::vector<int>& gens) {
    std::vector<bool> seen(m, false);
    std::queue<int> todo;
    seen[identity] = true;
    todo.push(identity);
    while (!todo.empty()) {
      const int x = todo.front();
      todo.pop();
      for (int gen : gens) {
        const int y = table[x][gen];
        if (!seen[y]) {
          seen[y] = true;
          todo.push(y);
        }
      }
    }
    return seen;
  };
  std::vector<int> gens;
  std::vector<bool> covered = closure(gens);
  for (int h = 0; h < m; ++h) {
    if (!covered[h]) {
      gens.push_back(h);
      covered = closure(gens);
    }
  }
  std::vector<int> orders;
  for (int gen : gens) {
    int order = 1;
    for (int x = gen; x != identity; x = table[x][gen]) ++order;
    orders.push_back(order);
  }

  std::vector<std::vector<cd>> out;
  std::vector<int> exps(gens.size(), 0);
  while (true) {
    std::vector<cd> chi(m, cd(0.0));
    std::vector<bool> set(m, false);
    chi[identity] = 1.0;
    set[identity] = true;
    std::queue<int> todo;
    todo.push(identity);
    bool ok = true;
    while (!todo.empty() && ok) {
      const int x = todo.front();
      todo.pop();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const cd value = chi[x] * std::polar(1.0, 2.0 * kPi * exps[i] / orders[i]);
        const int y = table[x][gens[i]];
        if (!set[y]) {
          chi[y] = value;
          set[y] = true;
          todo.push(y);
        } else if (std::abs(chi[y] - value) > 1e-9) {
          ok = false;
          break;
        }
      }
    }
    for (int a = 0; a < m && ok; ++a) {
      for (int b = 0; b < m && ok; ++b) {
        ok = std::abs(chi[table[a][b]] - chi[a] * chi[b]) <= 1e-9;
      }
    }
    if (ok) out.push_back(chi);
    std::size_t i = 0;
    while (i < exps.size() && ++exps[i] == orders[i]) exps[i++] = 0;
    if (i == exps.size()) break;
  }
  if (static_cast<int>(out.size()) != m) {
    throw Error(ErrorKind::Numerical, "character enumeration found " +
                                          std::to_string(out.size()) + " of " +
                                          std::to_string(m) + " characters");
  }
  return out;
}

struct ConvolutionLayout {
  std::vector<int> block_dims;
  /// Per component: |H|.
  std::vector<int> block_isotropy;
  /// Block coordinates of lambda_p, one column per arrow.
  Matrix V;
};

ConvolutionLayout convolution_layout(const FiniteGroupoid& g) {
  require_valid(g);
  const int n = g.size();
  const std::vector<int>& units = g.units();

  // Components of the object set, in order of first unit.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int p = 0; p < n; ++p) parent[find(g.source(p))] = find(g.target(p));
  std::vector<std::vector<int>> components;
  std::vector<int> component_of_root(n, -1);
  for (int u : units) {
    const int root = find(u);
    if (component_of_root[root] < 0) {
      component_of_root[root] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[component_of_root[root]].push_back(u);
  }

  struct Piece {
    std::vector<int> objects;
    std::vector<int> tau;
    std::vector<int> local;  // arrow -> position in H, or -1
    std::vector<std::vector<cd>> chars;
    int first_block = 0;
  };
  std::vector<Piece> pieces;
  ConvolutionLayout layout;
  for (const auto& objects : components) {
    Piece piece;
    piece.objects = objects;
    const int o = objects.front();
    for (int obj : objects) {
      int tau = -1;
      if (obj == o) {
        tau = o;
      } else {
        for (int p = 0; p < n && tau < 0; ++p) {
          if (g.source(p) == o && g.target(p) == obj) tau = p;
        }
      }
      piece.tau.push_back(tau);
    }
    std::vector<int> isotropy;
    piece.local.assign(n, -1);
    for (int p = 0; p < n; ++p) {
      if (g.source(p) == o && g.target(p) == o) {
        piece.local[p] = static_cast<int>(isotropy.size());
        isotropy.push_back(p);
      }
    }
    const int m = static_cast<int>(isotropy.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        table[a][b] = piece.local[g.product(isotropy[a], isotropy[b])];
        if (g.product(isotropy[a], isotropy[b]) != g.product(isotropy[b], isotropy[a])) {
          throw Error(ErrorKind::Unsupported,
                      "nonabelian isotropy at object " + g.name(o) + ": " + g.name(isotropy[a]) +
                          " and " + g.name(isotropy[b]) + " do not commute");
        }
      }
    }
    piece.chars = characters(table, piece.local[o]);
    piece.first_block = static_cast<int>(layout.block_dims.size());
    for (int c = 0; c < m; ++c) layout.block_dims.push_back(static_cast<int>(objects.size()));
    layout.block_isotropy.push_back(m);
    pieces.push_back(std::move(piece));
  }

  const BlockAlgebra A(layout.block_dims);
  layout.V = Matrix::Zero(A.total_dim(), n);
  for (const Piece& piece : pieces) {
    auto pos = [&](int obj) {
      return static_cast<int>(std::find(piece.objects.begin(), piece.objects.end(), obj) -
                              piece.objects.begin());
    };
    for (int p = 0; p < n; ++p) {
      const int i = pos(g.target(p));
      const int j = pos(g.source(p));
      if (i == static_cast<int>(piece.objects.size())) continue;
      const int h = g.product(g.inverse(piece.tau[i]), g.product(p, piece.tau[j]));
      for (std::size_t c = 0; c < piece.chars.size(); ++c) {
        layout.V(A.index(piece.first_block + static_cast<int>(c), i, j), p) =
            piece.chars[c][piece.local[h]];
      }
    }
  }
  return layout;
}

}  // namespace

QuantumGroupoidData function_algebra_model(const FiniteGroupoid& g) {
  return assemble_function_model(g, std::vector<double>(g.units().size(), 1.0));
}

QuantumGroupoidData function_algebra_model(const FiniteGroupoid& g,
                                           const std::vector<double>& nu_values) {
  for (std::size_t k = 0; k < nu_values.size(); ++k) {
    if (std::abs(nu_values[k] - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidInput,
                  "the function model forces nu = counting measure: (nu (x) id)(E) = 1 needs "
                  "nu(1_{s^-1(u)}) = 1, but nu(" +
                      (k < g.units().size() ? g.name(g.units()[k]) : std::to_string(k)) +
                      ") = " + std::to_string(nu_values[k]));
    }
  }
  return assemble_function_model(g, nu_values);
}

QuantumGroupoidData function_algebra_model_unchecked(const FiniteGroupoid& g,
                                                     const std::vector<double>& nu_values) {
  return assemble_function_model(g, nu_values);
}

Matrix convolution_lambda_matrix(const FiniteGroupoid& g) { return convolution_layout(g).V; }

QuantumGroupoidData convolution_algebra_model(const FiniteGroupoid& g) {
  const ConvolutionLayout layout = convolution_layout(g);
  const BlockAlgebra A(layout.block_dims);
  const BlockAlgebra AA = tensor_algebra(A, A);
  const int n = g.size();
  const int nu = static_cast<int>(g.units().size());
  const Matrix& V = layout.V;
  Eigen::FullPivLU<Matrix> lu(V);
  if (!lu.isInvertible()) throw Error(ErrorKind::Numerical, "lambda basis is not a basis");
  const Matrix V_inv = lu.inverse();

  std::vector<Element> lambda;
  for (int p = 0; p < n; ++p) lambda.emplace_back(A, V.col(p));
  Matrix W(AA.total_dim(), n);
  for (int p = 0; p < n; ++p) W.col(p) = kron(lambda[p], lambda[p], AA).coords();
  Element E = Element::zero(AA);
  Matrix iota(A.total_dim(), nu);
  for (int k = 0; k < nu; ++k) {
    const Element& lu_k = lambda[g.units()[k]];
    E += kron(lu_k, lu_k, AA);
    iota.col(k) = lu_k.coords();
  }

  std::vector<Matrix> density;
  int block = 0;
  for (std::size_t c = 0; c < layout.block_isotropy.size(); ++c) {
    const int m = layout.block_isotropy[c];
    for (int r = 0; r < m; ++r, ++block) {
      const int d = layout.block_dims[block];
      density.push_back(Matrix::Identity(d, d) / static_cast<double>(m));
    }
  }
  const Weight phi(A, Element::from_blocks(A, density));

  const BlockAlgebra B = commutative(nu);
  const BlockAlgebra C = commutative(nu);
  MapFlags r_flags = homomorphism_flags(true);
  r_flags.anti_multiplicative = true;
  r_flags.injective = true;
  return QuantumGroupoidData{A,
                             LinearMap(A, AA, W * V_inv, homomorphism_flags(false)),
                             E,
                             BaseData{B, C, LinearMap(B, C, Matrix::Identity(nu, nu), r_flags),
                                      Weight::trace(B)},
                             SubalgebraEmbedding(B, A, iota),
                             SubalgebraEmbedding(C, A, iota),
                             phi,
                             phi};
}

// ---------------------------------------------------------------------------

WeakHopfData function_weak_hopf(const FiniteGroupoid& g) {
  QuantumGroupoidData qg = function_algebra_model(g);
  const int n = g.size();
  Vector eps = Vector::Zero(n);
  for (int u : g.units()) eps(u) = 1.0;
  Matrix S = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) S(p, g.inverse(p)) = 1.0;
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  return WeakHopfData{qg.A, qg.delta, Functional::from_values(qg.A, eps),
                      LinearMap(qg.A, qg.A, S, flags)};
}

WeakHopfData convolution_weak_hopf(const FiniteGroupoid& g) {
  QuantumGroupoidData qg = convolution_algebra_model(g);
  const Matrix V = convolution_layout(g).V;
  const Matrix V_inv = V.inverse();
  const int n = g.size();
  Matrix P = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) P(g.inverse(p), p) = 1.0;
  const Vector eps = V_inv.transpose() * Vector::Ones(n);
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  return WeakHopfData{qg.A, qg.delta, Functional::from_values(qg.A, eps),
                      LinearMap(qg.A, qg.A, V * P * V_inv, flags)};
}

namespace {

/// A commutative *-subalgebra spanned by the columns of `image`, rebuilt from
/// its minimal projections.
SubalgebraEmbedding commutative_image(const BlockAlgebra& A, const Matrix& image,
                                      const std::string& what) {
  const Subspace span = Subspace::from_columns(image);
  const Index r = span.dim();
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  Element h = Element::zero(A);
  for (Index i = 0; i < r; ++i) {
    const Element u(A, span.basis().col(i));
    h += cd(coeff(rng) * (i + 1)) * (u + u.adjoint());
  }
  struct Eig {
    double value;
    int block;
    Vector vec;
  };
  std::vector<Eig> eigs;
  double scale = 1.0;
  for (int k = 0; k < A.num_blocks(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.block_matrix(k));
    for (Index j = 0; j < es.eigenvalues().size(); ++j) {
      eigs.push_back({es.eigenvalues()(j), k, es.eigenvectors().col(j)});
      scale = std::max(scale, std::abs(es.eigenvalues()(j)));
    }
  }
  std::stable_sort(eigs.begin(), eigs.end(),
                   [](const Eig& a, const Eig& b) { return a.value < b.value; });
  std::vector<Element> projections;
  for (std::size_t i = 0; i < eigs.size();) {
    std::size_t j = i;
    std::vector<Matrix> blocks;
    for (int k = 0; k < A.num_blocks(); ++k) {
      blocks.push_back(Matrix::Zero(A.block_dim(k), A.block_dim(k)));
    }
    while (j < eigs.size() && eigs[j].value - eigs[i].value <= 1e-8 * scale) {
      blocks[eigs[j].block] += eigs[j].vec * eigs[j].vec.adjoint();
      ++j;
    }
    projections.push_back(Element::from_blocks(A, blocks));
    i = j;
  }
  std::vector<Element> inside;
  for (const Element& p : projections) {
    if (span.distance(p.coords()) <= 1e-8 * std::max(1.0, p.frobenius_norm())) {
      inside.push_back(p);
    }
  }
  if (static_cast<Index>(inside.size()) != r) {
    throw Error(ErrorKind::Unsupported,
                "image of " + what + " is not a commutative subalgebra with a detectable "
                "projection basis");
  }
  auto first = [](const Element& p) {
    for (Index c = 0; c < p.coords().size(); ++c) {
      if (std::abs(p.coords()(c)) > 1e-8) return c;
    }
    return p.coords().size();
  };
  std::stable_sort(inside.begin(), inside.end(),
                   [&](const Element& a, const Element& b) { return first(a) < first(b); });
  Matrix iota(A.total_dim(), r);
  for (Index i = 0; i < r; ++i) iota.col(i) = inside[i].coords();
  return SubalgebraEmbedding(commutative(r), A, iota);
}

}  // namespace

CounitalMaps counital_maps(const WeakHopfData& w, double) {
  const BlockAlgebra& A = w.A;
  const BlockAlgebra AA = tensor_algebra(A, A);
  const Element one = Element::unit(A);
  const Element d1 = w.delta(one);
  LinearMap eps_s = LinearMap::from_function(A, A, [&](const Element& x) {
    return slice(Side::Right, w.epsilon, kron(one, x, AA) * d1);
  });
  LinearMap eps_t = LinearMap::from_function(A, A, [&](const Element& x) {
    return slice(Side::Left, w.epsilon, d1 * kron(x, one, AA));
  });
  SubalgebraEmbedding b = commutative_image(A, eps_s.matrix(), "eps_s");
  SubalgebraEmbedding c = commutative_image(A, eps_t.matrix(), "eps_t");
  return CounitalMaps{eps_s, eps_t, b, c};
}

VerificationReport check_weak_hopf_haar(const WeakHopfData& w, const Weight& phi, double tol) {
  VerificationReport r;
  double s_invariance = 0.0;
  for (Index p = 0; p < w.A.total_dim(); ++p) {
    const Element e = Element::basis(w.A, p);
    const cd before = phi(e);
    s_invariance =
        std::max(s_invariance, std::abs(phi(w.S(e)) - before) / std::max(1.0, std::abs(before)));
  }
  r.add(make_check("weak_hopf.phi_S", "normalized Haar measure: phi o S = phi", s_invariance,
                   tol));
  const Element one = Element::unit(w.A);
  r.add(make_check("weak_hopf.normalized", "normalized Haar measure: (id(x)phi)(Delta(1)) = 1",
                   distance(slice(Side::Right, phi, w.delta(one)), one), tol));
  return r;
}

VerificationReport check_counital_coherence(const WeakHopfData& w, double tol) {
  const CounitalMaps maps = counital_maps(w, tol);
  VerificationReport r;
  double worst = 0.0;
  for (Index p = 0; p < w.A.total_dim(); ++p) {
    const Element e = Element::basis(w.A, p);
    worst = std::max(worst, distance(w.S(maps.eps_t(e)), maps.eps_s(w.S(e))));
  }
  r.add(make_check("weak_hopf.counital_coherence", "S o eps_t = eps_s o S", worst, tol));
  return r;
}

// ---------------------------------------------------------------------------

BaseData matrix_base(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "matrix base needs n >= 1");
  const BlockAlgebra B({n});
  const BlockAlgebra C({n});
  Matrix t = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(C.index(0, j, i), B.index(0, i, j)) = 1.0;
  }
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  flags.injective = true;
  return BaseData{B, C, LinearMap(B, C, t, flags), Weight::trace(B, n)};
}

BaseData commutative_base(const std::vector<double>& weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidInput, "commutative base needs weights");
  const Index k = static_cast<Index>(weights.size());
  const BlockAlgebra B = commutative(k);
  const BlockAlgebra C = commutative(k);
  Vector density(k);
  for (Index i = 0; i < k; ++i) density(i) = weights[i];
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  flags.injective = true;
  return BaseData{B, C, LinearMap(B, C, Matrix::Identity(k, k), flags),
                  Weight(B, Element(B, density))};
}

}  // namespace qgl
