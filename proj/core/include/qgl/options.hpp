#pragma once

#include <cstdint>
#include <vector>

namespace qgl {

struct CheckOptions {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  /// Random samples per randomized check.
  int samples = 8;
  std::vector<double> t_samples{1.0, -1.0, 0.5, -0.5, 0.3, -0.3, 0.1};
  std::vector<double> sepid_t{1.0, -1.0, 0.5, -0.5, 0.25};
};

}  // namespace qgl
