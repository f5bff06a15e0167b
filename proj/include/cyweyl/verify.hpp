#pragma once

#include "cyweyl/root_data.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cyweyl {

struct CheckResult {
  std::string name;
  bool pass = false;
  /// Worst observed error (or 0/1 for exact checks).
  double measured = 0.0;
  double tolerance = 0.0;
  int samples = 0;
};

struct VerifyReport {
  std::string space;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Invariant suite for one space; deterministic for a fixed seed.
/// Rank two: dimension identity, invariant-map round trips, Weyl invariance,
/// symmetrized seed, wall limits, invariant/image residual agreement and the
/// complex Hessian determinant identity.  Rank one: dimension identity, the
/// small-s limit of D, the small-u limit of F and the profile ODE.
VerifyReport verify_space(const SymmetricSpaceDescriptor& desc, std::uint64_t seed = 20240601);

/// Fixed-width table, one line per check, ending with a summary line.
std::string format_report(const VerifyReport& report);

}  // namespace cyweyl
