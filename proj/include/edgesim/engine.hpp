#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgesim/catalog.hpp"
#include "edgesim/solvers.hpp"
#include "edgesim/workload.hpp"

namespace edgesim {

enum class PolicyKind { Ga, Brute, Rand, Fifo, Lru, Lfu };

std::string policy_name(PolicyKind p);
PolicyKind parse_policy(const std::string& name);

enum class BetaMode { Estimated, Oracle };

struct SummaryMetrics {
  double avg_cost = 0;            // mean per-slot total over all T slots
  double miss_rate = 0;           // fraction of requests undeployed at arrival
  double avg_service_delay_s = 0; // inference only on hit; fetch + preload + inference on miss
  std::int64_t evictions = 0;
  std::int64_t admissions = 0;
  std::int64_t requests = 0;
  std::int64_t misses = 0;
};

struct SlotRecord {
  DeploymentVector decision;
  SlotCostBreakdown cost;
  int misses = 0;
  int evictions = 0;
};

struct SimulationRun {
  PolicyKind policy = PolicyKind::Ga;
  BetaMode beta_mode = BetaMode::Estimated;
  std::vector<SlotRecord> per_slot;
  SummaryMetrics metrics;
};

struct RunOptions {
  PolicyKind policy = PolicyKind::Ga;
  BetaMode beta_mode = BetaMode::Estimated;
  GaParams ga;
  std::uint64_t seed = 0;
  bool force_admit_missed = false;  // pin missed models to 1 in GA/brute decisions
};

/// Runs the time-slotted simulation against a fixed trace. The edge starts
/// empty. GA/brute policies decide once per slot, only on slots with at
/// least one miss; baselines react to every miss as it arrives.
SimulationRun run(const Scenario& scenario, const RequestTrace& trace,
                  const RunOptions& options);

struct PolicyRow {
  PolicyKind policy;
  SummaryMetrics metrics;
};

/// Runs each requested policy against the identical trace. The per-policy
/// seed is derived from (options.seed, policy kind), so duplicate entries
/// produce identical rows.
std::vector<PolicyRow> compare(const Scenario& scenario, const RequestTrace& trace,
                               const std::vector<PolicyKind>& policies,
                               const RunOptions& options);

/// Columns: slot, policy, decision_bits, l1_s, l2_s, l3_s, switching, r1_gb,
/// r2_gb, resource, total, misses, evictions.
std::string per_slot_csv(const std::vector<SimulationRun>& runs);
std::string summary_json(const std::vector<PolicyRow>& rows);

}  // namespace edgesim
