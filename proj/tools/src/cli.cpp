#include "qgl_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qgl/constructors.hpp"
#include "qgl/error.hpp"
#include "qgl/groupoid.hpp"
#include "qgl/io.hpp"
#include "qgl/qgroupoid.hpp"
#include "qgl/sepid.hpp"

namespace qgl::cli {

namespace {

struct RunConfig {
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string report_path;
  std::string format = "json";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

CheckOptions options_of(const RunConfig& cfg) {
  CheckOptions o;
  o.tol = cfg.tolerance;
  o.seed = cfg.seed;
  return o;
}

int emit(const VerificationReport& report, const RunConfig& cfg, std::ostream& out) {
  const std::string text =
      cfg.format == "text" ? write_report_text(report) : write_report_json(report);
  if (cfg.report_path.empty()) {
    out << text;
  } else {
    write_file(cfg.report_path, text);
    out << "verdict: " << (report.verdict() ? "true" : "false") << " (" << report.checks().size()
        << " checks, " << report.failures().size() << " failed), report written to "
        << cfg.report_path << "\n";
  }
  return report.verdict() ? kOk : kFailed;
}

void add_report_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--report", cfg.report_path, "Write the report to this file");
  cmd->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
}

void add_check_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol", cfg.tolerance, "Residual tolerance")
      ->envname("QGL_TOL")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Seed for randomized checks");
  add_report_flags(cmd, cfg);
}

FiniteGroupoid demo_union() {
  return disjoint_union(cyclic_group(2), pair_groupoid(2), "z2.", "pair.");
}

VerificationReport run_demo(const std::string& name, int n, const RunConfig& cfg,
                            std::ostream& err) {
  const CheckOptions options = options_of(cfg);
  if (name == "pair-groupoid") return verify_quantum_groupoid(function_algebra_model(pair_groupoid(n)), options);
  if (name == "matrix-algebra") return verify_quantum_groupoid(convolution_algebra_model(pair_groupoid(n)), options);
  if (name == "group") return verify_quantum_groupoid(function_algebra_model(cyclic_group(n)), options);
  if (name == "group-algebra") return verify_quantum_groupoid(convolution_algebra_model(cyclic_group(n)), options);
  if (name == "disjoint-union") return verify_quantum_groupoid(function_algebra_model(demo_union()), options);
  if (name == "matrix-base") {
    const BaseData base = matrix_base(n);
    const SolveResult solved = solve_separability_idempotent(base, cfg.tolerance);
    VerificationReport r;
    r.add(make_verdict("sepid.solve", "separability idempotent for (B, nu, R) exists",
                       solved.solved(),
                       std::max({solved.linear_residual, solved.selfadjoint_residual,
                                 solved.idempotent_residual}),
                       cfg.tolerance, solved.diagnostic));
    if (solved.solved()) {
      r.append(check_separability_conditions(base, solved.candidate, cfg.tolerance, "sepid.def"));
      r.append(check_sepid_properties(SeparabilityTriple::build(base, solved.candidate, cfg.tolerance),
                                      options));
    }
    return r;
  }
  if (name == "bad-weights") {
    // Two isolated objects carrying nu with weights (1, 2).
    const FiniteGroupoid g = disjoint_union(cyclic_group(1), cyclic_group(1), "u.", "v.");
    const SolveResult solved = solve_separability_idempotent(commutative_base({1.0, 2.0}), cfg.tolerance);
    err << "bad-weights: " << solved.diagnostic << "\n";
    return verify_quantum_groupoid(function_algebra_model_unchecked(g, {1.0, 2.0}), options);
  }
  throw std::out_of_range(name);
}

int exit_code_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
      return kParseError;
    case ErrorKind::Unsupported:
      return kUnsupported;
    case ErrorKind::InvalidInput:
    case ErrorKind::Numerical:
      return kFailed;
  }
  return kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify finite quantum groupoid axioms", "qgl"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string path;
  std::string model = "function";
  std::string output;
  std::string demo;
  int n = 0;

  auto* validate = app.add_subcommand("validate-groupoid", "Check a groupoid table");
  validate->add_option("path", path, "Groupoid JSON file")->required();
  add_report_flags(validate, cfg);

  auto* build = app.add_subcommand("build", "Assemble quantum groupoid data from a groupoid");
  build->add_option("path", path, "Groupoid JSON file")->required();
  build->add_option("--model", model, "Which algebra to build")
      ->check(CLI::IsMember({"function", "convolution"}));
  build->add_option("-o,--output", output, "Output file (stdout if omitted)");

  auto* check = app.add_subcommand("check", "Verify serialized quantum groupoid data");
  check->add_option("path", path, "Data JSON file")->required();
  add_check_flags(check, cfg);

  auto* demo_cmd = app.add_subcommand("demo", "Build and check a named fixture");
  demo_cmd->add_option("name", demo,
                       "pair-groupoid, matrix-algebra, group, group-algebra, matrix-base, "
                       "bad-weights or disjoint-union")
      ->required();
  demo_cmd->add_option("--n", n, "Size parameter")->check(CLI::Range(1, 8));
  add_check_flags(demo_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    if (*validate) {
      const FiniteGroupoid g = parse_groupoid(read_file(path));
      return emit(validate_groupoid(g), cfg, out);
    }
    if (*build) {
      const FiniteGroupoid g = parse_groupoid(read_file(path));
      const QuantumGroupoidData qg =
          model == "function" ? function_algebra_model(g) : convolution_algebra_model(g);
      const std::string text = write_quantum_groupoid(qg);
      if (output.empty()) {
        out << text;
      } else {
        write_file(output, text);
      }
      return kOk;
    }
    if (*check) {
      const QuantumGroupoidData qg = parse_quantum_groupoid(read_file(path));
      return emit(verify_quantum_groupoid(qg, options_of(cfg)), cfg, out);
    }
    if (*demo_cmd) {
      static const std::map<std::string, int> default_n{
          {"pair-groupoid", 3}, {"matrix-algebra", 2}, {"group", 2},      {"group-algebra", 3},
          {"matrix-base", 2},   {"bad-weights", 1},    {"disjoint-union", 1}};
      auto it = default_n.find(demo);
      if (it == default_n.end()) {
        err << "unknown demo \"" << demo << "\"; known demos:";
        for (const auto& [k, v] : default_n) err << " " << k;
        err << "\n";
        return kUnknownDemo;
      }
      return emit(run_demo(demo, n > 0 ? n : it->second, cfg, err), cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_of(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}

}  // namespace qgl::cli
