#include "qgl/report.hpp"

#include <algorithm>
#include <cmath>

namespace qgl {

Check make_check(std::string id, std::string anchor, double residual, double tolerance,
                 std::string detail) {
  const bool pass = std::isfinite(residual) && residual <= tolerance;
  return Check{std::move(id), std::move(anchor), residual, tolerance, pass,
               std::move(detail)};
}

Check make_verdict(std::string id, std::string anchor, bool pass, double residual,
                   double tolerance, std::string detail) {
  return Check{std::move(id), std::move(anchor), residual, tolerance, pass,
               std::move(detail)};
}

void VerificationReport::append(const VerificationReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool VerificationReport::verdict() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<const Check*> VerificationReport::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks_) {
    if (!c.pass) out.push_back(&c);
  }
  return out;
}

double VerificationReport::max_residual() const {
  double best = 0.0;
  for (const auto& c : checks_) {
    if (std::isfinite(c.residual)) best = std::max(best, c.residual);
  }
  return best;
}

}  // namespace qgl
