#pragma once

#include <string>
#include <vector>

namespace qgl {

/// One named verification outcome. `anchor` names the mathematical statement
/// being checked so that a failing report is readable on its own.
struct Check {
  std::string id;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Residual-based check: passes iff residual is finite and <= tolerance.
Check make_check(std::string id, std::string anchor, double residual, double tolerance,
                 std::string detail = {});

/// Flag-based check for verdicts that are not a single residual (span
/// relations, structural failures).
Check make_verdict(std::string id, std::string anchor, bool pass, double residual,
                   double tolerance, std::string detail = {});

class VerificationReport {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  void append(const VerificationReport& other);

  const std::vector<Check>& checks() const { return checks_; }
  bool verdict() const;
  bool empty() const { return checks_.empty(); }
  const Check* find(const std::string& id) const;
  std::vector<const Check*> failures() const;
  /// Largest finite residual among passing and failing checks alike.
  double max_residual() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace qgl
