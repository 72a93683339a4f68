#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgesim/catalog.hpp"

namespace edgesim {

/// Binary deployment decision over the catalog; bit m set means model m is
/// deployed at the edge in the current slot.
struct DeploymentVector {
  std::vector<std::uint8_t> bits;

  DeploymentVector() = default;
  explicit DeploymentVector(int m) : bits(static_cast<std::size_t>(m), 0) {}

  int size() const { return static_cast<int>(bits.size()); }
  bool operator==(const DeploymentVector&) const = default;

  static DeploymentVector zeros(int m) { return DeploymentVector(m); }
  static DeploymentVector from_mask(std::uint64_t mask, int m);

  std::string to_string() const;  // e.g. "1010"
};

struct FeasibilityReport {
  bool feasible = false;
  double storage_used_gb = 0, storage_cap_gb = 0;
  double gpu_used_gb = 0, gpu_cap_gb = 0;
  double power_used_kw = 0, power_cap_kw = 0;
};

/// Checks the storage, GPU-memory, and power budgets. Comparisons are
/// inclusive; boundary overshoot within 1e-9 relative counts as feasible to
/// absorb repeated-sum rounding.
FeasibilityReport check(const DeploymentVector& a, const Catalog& catalog,
                        const EdgeConfig& edge);

}  // namespace edgesim
