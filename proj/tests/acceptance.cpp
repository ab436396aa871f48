// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qgl/constructors.hpp"
#include "qgl/error.hpp"
#include "qgl/groupoid.hpp"
#include "qgl/qgroupoid.hpp"
#include "qgl/sepid.hpp"
#include "qgl/weights.hpp"

using namespace qgl;

namespace {

constexpr double kTol = 1e-9;

struct Fixture {
  std::string name;
  std::function<QuantumGroupoidData()> build;
};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<Fixture> groupoid_fixtures() {
  std::vector<Fixture> out;
  for (int n = 2; n <= 4; ++n)
    out.push_back({"FX1 pair n=" + std::to_string(n), [n] { return function_algebra_model(pair_groupoid(n)); }});
  for (int n = 2; n <= 4; ++n)
    out.push_back({"FX2 M_" + std::to_string(n), [n] { return convolution_algebra_model(pair_groupoid(n)); }});
  for (int n = 2; n <= 3; ++n)
    out.push_back({"FX3 Z" + std::to_string(n), [n] { return function_algebra_model(cyclic_group(n)); }});
  out.push_back({"union Z2+pair2", [] {
                   return function_algebra_model(disjoint_union(cyclic_group(2), pair_groupoid(2), "z2.", "pair."));
                 }});
  return out;
}

std::vector<Fixture> group_fixtures() {
  std::vector<Fixture> out;
  for (int n = 2; n <= 3; ++n) {
    out.push_back({"C(Z" + std::to_string(n) + ")", [n] { return function_algebra_model(cyclic_group(n)); }});
    out.push_back({"CZ" + std::to_string(n), [n] { return convolution_algebra_model(cyclic_group(n)); }});
  }
  out.push_back({"C(S3)", [] { return function_algebra_model(symmetric_group_3()); }});
  return out;
}

std::string first_failure(const VerificationReport& r) {
  for (const auto& c : r.checks()) {
    if (!c.pass) return c.id + " [" + c.anchor + "] residual " + std::to_string(c.residual);
  }
  return {};
}

void require_all_within(const VerificationReport& r, double tol, const std::string& name, Outcome& o) {
  if (!r.verdict()) o.fail(name + ": " + first_failure(r));
  for (const auto& c : r.checks()) {
    if (!(c.residual <= tol)) {
      o.fail(name + ": " + c.id + " residual " + std::to_string(c.residual));
      return;
    }
  }
}

std::vector<std::pair<std::string, VerificationReport>> g_fixture_reports;

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& f : groupoid_fixtures()) {
    auto r = verify_quantum_groupoid(f.build());
    require_all_within(r, kTol, f.name, o);
    g_fixture_reports.emplace_back(f.name, r);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 30.0) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << g_fixture_reports.size() << " fixtures in " << secs << " s";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  const BaseData fx4 = matrix_base(2);
  const SolveResult s4 = solve_separability_idempotent(fx4, kTol);
  const BlockAlgebra m2({2});
  const BlockAlgebra bc = tensor_algebra(m2, m2);
  Element expected = Element::zero(bc);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      expected += 0.5 * kron(Element::matrix_unit(m2, 0, i, j), Element::matrix_unit(m2, 0, i, j), bc);
  const double err4 = distance(s4.candidate, expected);
  if (!s4.solved()) o.fail("FX4 not solved: " + s4.diagnostic);
  if (!(err4 <= 1e-10)) o.fail("FX4 ||E - expected|| = " + std::to_string(err4));
  if (s4.solved()) {
    CheckOptions opt;
    opt.tol = kTol;
    auto r = check_sepid_properties(SeparabilityTriple::build(fx4, s4.candidate, kTol), opt);
    for (char k = 'a'; k <= 'l'; ++k) {
      const Check* c = r.find(std::string("sepid.") + k);
      if (!c || !c->pass) o.fail(std::string("FX4 sub-check ") + k + " failed");
    }
  }
  const SolveResult s5 = solve_separability_idempotent(commutative_base({1.0, 2.0}), kTol);
  if (s5.solved()) o.fail("FX5 unexpectedly solved");
  const double gap5 = std::abs(s5.idempotent_residual - 0.25);
  if (!(gap5 <= 1e-10)) o.fail("FX5 ||E^2 - E|| = " + std::to_string(s5.idempotent_residual));
  std::ostringstream d;
  d << "FX4 error " << err4 << ", FX5 ||E^2-E|| = " << s5.idempotent_residual;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& f : group_fixtures()) {
    const auto qg = f.build();
    if (qg.base.B.total_dim() != 1) o.fail(f.name + ": B has dim " + std::to_string(qg.base.B.total_dim()));
    const double e = distance(qg.E, Element::unit(qg.E.algebra()));
    if (!(e <= 1e-12)) o.fail(f.name + ": ||E - 1(x)1|| = " + std::to_string(e));
    auto r = verify_quantum_groupoid(qg);
    if (!r.verdict()) o.fail(f.name + ": " + first_failure(r));
    g_fixture_reports.emplace_back(f.name, r);
  }
  if (o.pass) o.detail = std::to_string(group_fixtures().size()) + " group fixtures";
  return o;
}

BlockAlgebra random_algebra(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nblocks(1, 4), size(1, 4);
  std::vector<int> dims;
  int total = 0;
  const int want = nblocks(rng);
  for (int k = 0; k < want; ++k) {
    const int d = size(rng);
    if (total + d * d > 25) break;
    dims.push_back(d);
    total += d * d;
  }
  if (dims.empty()) dims.push_back(1);
  return BlockAlgebra(dims);
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  const std::vector<std::string> ids{"kms.identity", "modular.group_law", "gns.J", "gns.nabla"};
  for (int t = 0; t < 50; ++t) {
    const BlockAlgebra a = random_algebra(rng);
    const Weight w(a, random_positive(a, rng, 0.2, 5.0));
    CheckOptions opt;
    opt.tol = kTol;
    opt.seed = 100 + t;
    VerificationReport r = check_kms(w, opt, "kms");
    r.append(check_modular_group(w, opt, "modular"));
    r.append(check_gns(gns(w), opt, "gns"));
    for (const auto& id : ids) {
      const Check* c = r.find(id);
      if (!c) {
        o.fail("missing " + id);
        continue;
      }
      worst = std::max(worst, c->residual);
      if (!(c->residual <= kTol)) o.fail("weight " + std::to_string(t) + ": " + id + " residual " + std::to_string(c->residual));
    }
  }
  std::ostringstream d;
  d << "50 weights, worst residual " << worst;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& [name, r] : g_fixture_reports) {
    for (const char* id : {"weights.nu_psi", "weights.mu_phi"}) {
      const Check* c = r.find(id);
      if (!c) o.fail(name + ": missing " + id);
      else if (!(c->residual <= kTol)) o.fail(name + ": " + id + " residual " + std::to_string(c->residual));
    }
  }
  if (o.pass) o.detail = std::to_string(g_fixture_reports.size()) + " fixtures";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int count = 0;
  int largest = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const FiniteGroupoid g = random_groupoid(1 + static_cast<int>(seed % 3), 3, {1, 2, 3, 4}, seed);
    largest = std::max(largest, g.size());
    for (int model = 0; model < 2; ++model) {
      const std::string name = "seed " + std::to_string(seed) + (model ? " convolution" : " function");
      try {
        auto qg = model ? convolution_algebra_model(g) : function_algebra_model(g);
        CheckOptions opt;
        opt.seed = seed;
        auto r = verify_quantum_groupoid(qg, opt);
        if (!r.verdict()) {
          o.fail(name + ": " + first_failure(r));
          std::printf("  %s: %s\n", name.c_str(), first_failure(r).c_str());
        }
      } catch (const Error& e) {
        o.fail(name + ": " + e.what());
      }
    }
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " groupoids x 2 models, up to " + std::to_string(largest) + " arrows";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto expect = [&](const std::string& name, const VerificationReport& r, const std::string& id) {
    const Check* c = r.find(id);
    if (r.verdict()) o.fail(name + ": verdict true");
    else if (!c) o.fail(name + ": " + id + " missing");
    else if (c->pass) o.fail(name + ": " + id + " passed, first failure " + first_failure(r));
  };
  {
    auto qg = convolution_algebra_model(pair_groupoid(2));
    Matrix m = qg.delta.matrix();
    m.col(qg.A.index(0, 0, 1)).setZero();
    qg.delta = LinearMap(qg.A, qg.delta.codomain(), m, qg.delta.flags());
    expect("corrupted Delta", verify_quantum_groupoid(qg), "comult.full_left");
  }
  {
    auto qg = convolution_algebra_model(pair_groupoid(2));
    qg.E = Element::unit(qg.E.algebra());
    expect("E = 1(x)1", verify_quantum_groupoid(qg), "idempotent.density_left");
  }
  {
    auto qg = convolution_algebra_model(pair_groupoid(2));
    qg.phi = Weight(qg.A, Element::from_blocks(qg.A, {(Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished()}));
    expect("wrong phi", verify_quantum_groupoid(qg), "invariance.left.membership");
  }
  {
    auto qg = function_algebra_model(pair_groupoid(2));
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    qg.base.R = LinearMap(qg.base.B, qg.base.C, swap, qg.base.R.flags());
    expect("broken R", verify_quantum_groupoid(qg), "sepid.embedding");
  }
  expect("broken associativity", validate_groupoid(cyclic_group(3).with_product("g1", "g1", "g0")),
         "groupoid.associativity");
  expect("non-counting nu",
         verify_quantum_groupoid(function_algebra_model_unchecked(
             disjoint_union(cyclic_group(1), cyclic_group(1)), {1.0, 2.0})),
         "sepid.solve");
  if (o.pass) o.detail = "6 controls fail at the expected check";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  double cs = 1e300, ob = 1e300, obs = 1e300;
  for (int t = 0; t < 200; ++t) {
    const BlockAlgebra a1 = random_algebra(rng);
    BlockAlgebra a2({1 + t % 3});
    const BlockAlgebra t12 = tensor_algebra(a1, a2);
    const Weight psi(a1, random_positive(a1, rng, 0.2, 5.0));
    cs = std::min(cs, cauchy_schwarz_margin(psi, random_element(t12, rng), random_element(t12, rng)));
    const Functional omega(a1, random_element(a1, rng));
    ob = std::min(ob, omegabar_margin(omega, random_element(a1, rng)));
    const Functional omega2(a2, random_element(a2, rng));
    obs = std::min(obs, omegabar_slice_margin(omega2, random_element(t12, rng)));
  }
  if (!(cs >= -1e-10)) o.fail("Cauchy-Schwarz margin " + std::to_string(cs));
  if (!(ob >= -1e-10)) o.fail("|omega| margin " + std::to_string(ob));
  if (!(obs >= -1e-10)) o.fail("|omega| slice margin " + std::to_string(obs));
  std::ostringstream d;
  d << "min margins: Cauchy-Schwarz " << cs << ", |omega| " << ob << ", |omega| slice " << obs;
  if (o.pass) o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fixtures verify with residuals <= 1e-9", criterion1},
      {"separability solver on FX4 and FX5", criterion2},
      {"groups degenerate to B = C, E = 1(x)1", criterion3},
      {"modular suite on 50 random weights", criterion4},
      {"nu/psi and mu/phi identities on every fixture", criterion5},
      {"random groupoid sweep, both models", criterion6},
      {"negative controls", criterion7},
      {"inequality suite, 200 instances each", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  criterion %zu: %s  (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
