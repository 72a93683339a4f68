#include "edgesim/cost.hpp"

#include <cmath>

namespace edgesim {

namespace {

void require_same_length(const DeploymentVector& a, const DeploymentVector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("deployment vector length mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

}  // namespace

std::vector<int> evicted_set(const DeploymentVector& a_prev, const DeploymentVector& a_now) {
  require_same_length(a_prev, a_now);
  std::vector<int> out;
  for (int m = 0; m < a_prev.size(); ++m) {
    const auto i = static_cast<std::size_t>(m);
    if (a_prev.bits[i] && !a_now.bits[i]) out.push_back(m);
  }
  return out;
}

SwitchingCost switching_cost(const DeploymentVector& a_prev, const DeploymentVector& a_now,
                             const Catalog& catalog, const EdgeConfig& edge,
                             const ActiveCycles& beta) {
  require_same_length(a_prev, a_now);
  if (a_prev.size() != catalog.size()) {
    throw ValidationError("deployment vector does not match catalog size");
  }
  if (static_cast<int>(beta.beta.size()) != catalog.size()) {
    throw ValidationError("active-cycle vector does not match catalog size");
  }

  SwitchingCost sc;
  double beta_sum = 0.0;
  for (int m : evicted_set(a_prev, a_now)) {
    const auto i = static_cast<std::size_t>(m);
    const auto& p = catalog.models[i];
    const double b = beta.beta[i];
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw ValidationError("active cycle beta for model " + std::to_string(m) +
                            " must be positive, got " + std::to_string(b));
    }
    sc.l1_s += p.size_gb * 8.0 / edge.bandwidth_gbps;
    sc.l2_s += p.io_delay_s;
    sc.l3_s += p.infer_delay_s;
    beta_sum += b;
  }
  // No eviction means no switching and a zero cost; the denominator sum is
  // empty in that case.
  sc.switching = beta_sum > 0.0 ? (sc.l1_s + sc.l2_s + sc.l3_s) / beta_sum : 0.0;
  return sc;
}

ResourceCost resource_cost(const DeploymentVector& a_now, const Catalog& catalog,
                           const CostWeights& weights) {
  if (a_now.size() != catalog.size()) {
    throw ValidationError("deployment vector does not match catalog size");
  }
  ResourceCost rc;
  for (int m = 0; m < a_now.size(); ++m) {
    const auto i = static_cast<std::size_t>(m);
    if (!a_now.bits[i]) continue;
    rc.r1_gb += catalog.models[i].size_gb;
    rc.r2_gb += catalog.models[i].gpu_mem_gb;
  }
  rc.resource = rc.r1_gb + weights.w * rc.r2_gb;
  return rc;
}

SlotCostBreakdown slot_cost(const DeploymentVector& a_prev, const DeploymentVector& a_now,
                            const Catalog& catalog, const EdgeConfig& edge,
                            const ActiveCycles& beta, const CostWeights& weights) {
  const SwitchingCost sc = switching_cost(a_prev, a_now, catalog, edge, beta);
  const ResourceCost rc = resource_cost(a_now, catalog, weights);
  SlotCostBreakdown b;
  b.l1_s = sc.l1_s;
  b.l2_s = sc.l2_s;
  b.l3_s = sc.l3_s;
  b.switching = sc.switching;
  b.r1_gb = rc.r1_gb;
  b.r2_gb = rc.r2_gb;
  b.resource = rc.resource;
  b.total = weights.mu_l * b.switching + weights.mu_r * b.resource;
  return b;
}

}  // namespace edgesim
