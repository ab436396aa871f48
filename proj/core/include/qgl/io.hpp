#pragma once

// JSON and text serialization. Complex numbers are [re, im] pairs, matrices
// are arrays of rows, elements and densities are flat coordinate arrays.
// Every parse failure throws Error(Parse) naming the offending field.

#include <string>
#include <utility>

#include "qgl/groupoid.hpp"
#include "qgl/qgroupoid.hpp"
#include "qgl/report.hpp"
#include "qgl/sepid.hpp"

namespace qgl {

inline constexpr const char* kDataFormat = "qgl-data-1";
inline constexpr const char* kReportSchema = "qgl-report-1";

/// {"elements", "units", "source", "target", "mult", "inverse"}.
std::string write_groupoid(const FiniteGroupoid& g);
FiniteGroupoid parse_groupoid(const std::string& text);

/// {"B", "C", "R_matrix", "nu_density", "E"}.
std::string write_triple(const BaseData& base, const Element& E);
std::pair<BaseData, Element> parse_triple(const std::string& text);

/// {"format", "A", "Delta_matrix", "E", "base_triple", "iota_B", "iota_C",
/// "phi_density", "psi_density"}. The base triple's E is the solver candidate
/// at write time; checking solves for it again.
std::string write_quantum_groupoid(const QuantumGroupoidData& qg);
QuantumGroupoidData parse_quantum_groupoid(const std::string& text);

/// {"schema": "qgl-report-1", "checks": [...], "verdict"}; residual is null when not finite.
std::string write_report_json(const VerificationReport& report);
VerificationReport parse_report_json(const std::string& text);
std::string write_report_text(const VerificationReport& report);

}  // namespace qgl
