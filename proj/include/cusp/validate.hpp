#pragma once

#include "cusp/config.hpp"
#include "cusp/solver.hpp"

namespace cusp {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

/// Runs the invariant suite for one configuration: exact-model identities,
/// oracle equivalences, Taylor remainder orders, residual decay exponents,
/// the bounded-inverse proxy, cross-method agreement, foliation monotonicity
/// and stability signs. Decay-rate checks compare fitted slopes against the
/// theoretical upper bounds (faster decay passes). Checks that need a
/// perturbation are skipped for the zero family.
std::vector<CheckResult> run_validation(const RunConfig& cfg);

}  // namespace cusp
