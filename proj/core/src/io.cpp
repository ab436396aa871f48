#include "qgl/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qgl/error.hpp"

namespace qgl {

namespace {

using json = nlohmann::ordered_json;

double clean(double v) { return v == 0.0 ? 0.0 : v; }

json complex_json(cd z) { return json::array({clean(z.real()), clean(z.imag())}); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

json dims_json(const BlockAlgebra& a) { return json(a.block_dims()); }

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

cd parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(where, "expected a number or [re, im]");
  }
  return cd(j[0].get<double>(), j[1].get<double>());
}

Vector parse_vector(const json& j, Index expected, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (expected >= 0 && static_cast<Index>(j.size()) != expected) {
    fail(where, "expected " + std::to_string(expected) + " entries, found " +
                    std::to_string(j.size()));
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix parse_matrix(const json& j, Index rows, Index cols, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  if (static_cast<Index>(j.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    m.row(i) = parse_vector(j[i], cols, where + "[" + std::to_string(i) + "]").transpose();
  }
  return m;
}

BlockAlgebra parse_algebra(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of block sizes");
  std::vector<int> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 1) {
      fail(where + "[" + std::to_string(i) + "]", "block size must be a positive integer");
    }
    dims.push_back(j[i].get<int>());
  }
  return BlockAlgebra(dims);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Runs a construction step, turning InvalidInput into a Parse error at `where`.
template <typename Fn>
auto construct(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) fail(where, e.what());
    throw;
  }
}

json triple_json(const BaseData& base, const Element& E) {
  json j;
  j["B"] = dims_json(base.B);
  j["C"] = dims_json(base.C);
  j["R_matrix"] = matrix_json(base.R.matrix());
  j["nu_density"] = vector_json(base.nu.density().coords());
  j["E"] = vector_json(E.coords());
  return j;
}

std::pair<BaseData, Element> triple_from(const json& j, const std::string& where) {
  const BlockAlgebra B = parse_algebra(field(j, "B", where), where + ".B");
  const BlockAlgebra C = parse_algebra(field(j, "C", where), where + ".C");
  const Matrix R = parse_matrix(field(j, "R_matrix", where), C.total_dim(), B.total_dim(),
                                where + ".R_matrix");
  const Vector nu = parse_vector(field(j, "nu_density", where), B.total_dim(), where + ".nu_density");
  const BlockAlgebra BC = tensor_algebra(B, C);
  const Vector E = parse_vector(field(j, "E", where), BC.total_dim(), where + ".E");
  MapFlags flags;
  flags.anti_multiplicative = true;
  flags.star_preserving = true;
  flags.unital = true;
  flags.injective = true;
  BaseData base = construct(where, [&] {
    return BaseData{B, C, LinearMap(B, C, R, flags), Weight(B, Element(B, nu))};
  });
  return {std::move(base), Element(BC, E)};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string write_groupoid(const FiniteGroupoid& g) {
  json j;
  j["elements"] = g.names();
  j["units"] = g.unit_names();
  j["source"] = g.source_map();
  j["target"] = g.target_map();
  json mult = json::array();
  for (const auto& e : g.mult_entries()) mult.push_back({e[0], e[1], e[2]});
  j["mult"] = mult;
  j["inverse"] = g.inverse_map();
  return dump(j);
}

FiniteGroupoid parse_groupoid(const std::string& text) {
  const json j = parse_text(text);
  const std::string where = "groupoid";
  auto strings = [&](const std::string& key) {
    const json& arr = field(j, key, where);
    if (!arr.is_array()) fail(where + "." + key, "expected an array of ids");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) fail(where + "." + key + "[" + std::to_string(i) + "]", "expected a string id");
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  };
  auto mapping = [&](const std::string& key) {
    const json& obj = field(j, key, where);
    if (!obj.is_object()) fail(where + "." + key, "expected an object mapping ids to ids");
    std::map<std::string, std::string> out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!it.value().is_string()) fail(where + "." + key + "." + it.key(), "expected a string id");
      out[it.key()] = it.value().get<std::string>();
    }
    return out;
  };
  const std::vector<std::string> elements = strings("elements");
  const std::vector<std::string> units = strings("units");
  const auto source = mapping("source");
  const auto target = mapping("target");
  const auto inverse = mapping("inverse");
  const json& mult = field(j, "mult", where);
  if (!mult.is_array()) fail(where + ".mult", "expected an array of [p, q, pq] triples");
  std::vector<FiniteGroupoid::Entry> entries;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const json& e = mult[i];
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
        !e[2].is_string()) {
      fail(where + ".mult[" + std::to_string(i) + "]", "expected [p, q, pq] as strings");
    }
    entries.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>()});
  }
  return FiniteGroupoid(elements, units, source, target, entries, inverse);
}

std::string write_triple(const BaseData& base, const Element& E) {
  return dump(triple_json(base, E));
}

std::pair<BaseData, Element> parse_triple(const std::string& text) {
  return triple_from(parse_text(text), "triple");
}

std::string write_quantum_groupoid(const QuantumGroupoidData& qg) {
  json j;
  j["format"] = kDataFormat;
  j["A"] = dims_json(qg.A);
  j["Delta_matrix"] = matrix_json(qg.delta.matrix());
  j["E"] = vector_json(qg.E.coords());
  j["base_triple"] = triple_json(qg.base, solve_separability_idempotent(qg.base).candidate);
  j["iota_B"] = matrix_json(qg.iota_B.image_basis());
  j["iota_C"] = matrix_json(qg.iota_C.image_basis());
  j["phi_density"] = vector_json(qg.phi.density().coords());
  j["psi_density"] = vector_json(qg.psi.density().coords());
  return dump(j);
}

QuantumGroupoidData parse_quantum_groupoid(const std::string& text) {
  const json j = parse_text(text);
  const std::string where = "data";
  const json& format = field(j, "format", where);
  if (!format.is_string() || format.get<std::string>() != kDataFormat) {
    fail(where + ".format", std::string("expected \"") + kDataFormat + "\"");
  }
  const BlockAlgebra A = parse_algebra(field(j, "A", where), where + ".A");
  const BlockAlgebra AA = tensor_algebra(A, A);
  const Matrix delta = parse_matrix(field(j, "Delta_matrix", where), AA.total_dim(),
                                    A.total_dim(), where + ".Delta_matrix");
  const Vector E = parse_vector(field(j, "E", where), AA.total_dim(), where + ".E");
  auto triple = triple_from(field(j, "base_triple", where), where + ".base_triple");
  const BaseData& base = triple.first;
  const Matrix iota_b = parse_matrix(field(j, "iota_B", where), A.total_dim(),
                                     base.B.total_dim(), where + ".iota_B");
  const Matrix iota_c = parse_matrix(field(j, "iota_C", where), A.total_dim(),
                                     base.C.total_dim(), where + ".iota_C");
  const Vector phi = parse_vector(field(j, "phi_density", where), A.total_dim(),
                                  where + ".phi_density");
  const Vector psi = parse_vector(field(j, "psi_density", where), A.total_dim(),
                                  where + ".psi_density");
  MapFlags flags;
  flags.multiplicative = true;
  flags.star_preserving = true;
  return QuantumGroupoidData{
      A,
      LinearMap(A, AA, delta, flags),
      Element(AA, E),
      base,
      SubalgebraEmbedding(base.B, A, iota_b),
      SubalgebraEmbedding(base.C, A, iota_c),
      construct(where + ".phi_density", [&] { return Weight(A, Element(A, phi)); }),
      construct(where + ".psi_density", [&] { return Weight(A, Element(A, psi)); })};
}

// ---------------------------------------------------------------------------

std::string write_report_json(const VerificationReport& report) {
  json checks = json::array();
  for (const Check& c : report.checks()) {
    json item;
    item["id"] = c.id;
    item["anchor"] = c.anchor;
    item["residual"] = std::isfinite(c.residual) ? json(clean(c.residual)) : json(nullptr);
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  json j;
  j["schema"] = kReportSchema;
  j["checks"] = checks;
  j["verdict"] = report.verdict();
  return dump(j);
}

VerificationReport parse_report_json(const std::string& text) {
  const json j = parse_text(text);
  const std::string where = "report";
  const json& schema = field(j, "schema", where);
  if (!schema.is_string() || schema.get<std::string>() != kReportSchema) {
    fail(where + ".schema", std::string("expected \"") + kReportSchema + "\"");
  }
  const json& checks = field(j, "checks", where);
  if (!checks.is_array()) fail(where + ".checks", "expected an array");
  VerificationReport r;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string at = where + ".checks[" + std::to_string(i) + "]";
    const json& c = checks[i];
    Check out;
    const json& id = field(c, "id", at);
    const json& anchor = field(c, "anchor", at);
    const json& residual = field(c, "residual", at);
    const json& tol = field(c, "tolerance", at);
    const json& pass = field(c, "pass", at);
    if (!id.is_string() || !anchor.is_string()) fail(at, "id and anchor must be strings");
    if (!(residual.is_number() || residual.is_null())) fail(at + ".residual", "expected a number or null");
    if (!tol.is_number()) fail(at + ".tolerance", "expected a number");
    if (!pass.is_boolean()) fail(at + ".pass", "expected a boolean");
    out.id = id.get<std::string>();
    out.anchor = anchor.get<std::string>();
    out.residual = residual.is_null() ? std::numeric_limits<double>::infinity()
                                      : residual.get<double>();
    out.tolerance = tol.get<double>();
    out.pass = pass.get<bool>();
    if (auto it = c.find("detail"); it != c.end()) {
      if (!it->is_string()) fail(at + ".detail", "expected a string");
      out.detail = it->get<std::string>();
    }
    r.add(std::move(out));
  }
  const json& verdict = field(j, "verdict", where);
  if (!verdict.is_boolean()) fail(where + ".verdict", "expected a boolean");
  if (verdict.get<bool>() != r.verdict()) fail(where + ".verdict", "disagrees with the checks");
  return r;
}

std::string write_report_text(const VerificationReport& report) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const Check& c : report.checks()) width = std::max(width, c.id.size());
  for (const Check& c : report.checks()) {
    os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
       << c.id << "  " << std::scientific << std::setprecision(2) << std::setw(9) << c.residual
       << " <= " << c.tolerance << "  " << c.anchor;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << "verdict: " << (report.verdict() ? "true" : "false") << " (" << report.checks().size()
     << " checks, " << report.failures().size() << " failed)\n";
  return os.str();
}

}  // namespace qgl
