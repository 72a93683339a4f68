#pragma once

#include <vector>

#include "edgesim/catalog.hpp"
#include "edgesim/feasibility.hpp"

namespace edgesim {

/// Per-model active cycle: expected number of requests until the model is
/// requested again. Drives the switching-cost denominator.
struct ActiveCycles {
  std::vector<double> beta;
};

/// Cost breakdown for one slot's decision transition.
struct SlotCostBreakdown {
  double l1_s = 0;       // transmission delay of evicted models
  double l2_s = 0;       // preloading I/O delay of evicted models
  double l3_s = 0;       // inference delay of evicted models
  double switching = 0;  // (l1+l2+l3) / sum of evicted betas; 0 when no eviction
  double r1_gb = 0;      // deployed storage footprint
  double r2_gb = 0;      // deployed GPU-memory footprint
  double resource = 0;   // r1 + w * r2
  double total = 0;      // mu_l * switching + mu_r * resource
};

/// Models deployed at t-1 and dropped at t. Admissions are not evictions.
std::vector<int> evicted_set(const DeploymentVector& a_prev, const DeploymentVector& a_now);

struct SwitchingCost {
  double l1_s = 0, l2_s = 0, l3_s = 0, switching = 0;
};

/// Transmission uses the GB-to-gigabit factor 8: l1 = sum s_m * 8 / B.
SwitchingCost switching_cost(const DeploymentVector& a_prev, const DeploymentVector& a_now,
                             const Catalog& catalog, const EdgeConfig& edge,
                             const ActiveCycles& beta);

struct ResourceCost {
  double r1_gb = 0, r2_gb = 0, resource = 0;
};

ResourceCost resource_cost(const DeploymentVector& a_now, const Catalog& catalog,
                           const CostWeights& weights);

SlotCostBreakdown slot_cost(const DeploymentVector& a_prev, const DeploymentVector& a_now,
                            const Catalog& catalog, const EdgeConfig& edge,
                            const ActiveCycles& beta, const CostWeights& weights);

}  // namespace edgesim
