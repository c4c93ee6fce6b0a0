#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwlc/offspring.hpp"

namespace gwlc {

enum class VerifyLevel { quick, full };

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Cross-check suite over one distribution: generating-function
/// identities, joint-mass mode agreement, enumeration-oracle equalities,
/// sampler/profile invariants, and Monte Carlo sanity. `quick` runs a
/// fast subset; `full` exercises every library invariant at its
/// documented scale (seconds to a minute). Requires a critical law; the
/// seed feeds the sampling-based checks (fixed seed = deterministic
/// report).
VerifyReport run_verification(const OffspringDistribution& dist, VerifyLevel level,
                              std::uint64_t seed);

}  // namespace gwlc
