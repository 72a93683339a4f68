#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "edgesim/cost.hpp"
#include "edgesim/feasibility.hpp"

namespace edgesim {

struct GaParams {
  int population_k = 50;
  int max_generations_n = 200;
  double crossover_p1 = 0.8;
  double mutation_p2 = 0.05;      // per-gene flip probability
  int patience = 10;              // generations without improvement before stop
  std::uint64_t seed = 0;

  void validate() const;
};

/// Everything a per-slot decision needs: the incumbent deployment, the
/// current active-cycle estimate, and the scenario data.
struct DecisionContext {
  DeploymentVector a_prev;
  ActiveCycles beta;
  const Catalog* catalog = nullptr;
  const EdgeConfig* edge = nullptr;
  CostWeights weights;
  std::vector<int> forced_on;  // model ids pinned to 1 (force_admit_missed)

  void validate() const;
};

struct DecisionResult {
  DeploymentVector decision;
  SlotCostBreakdown cost;
  int generations_run = 0;  // 0 for non-GA solvers
};

/// Per-generation snapshot, taken when fitness is computed over the
/// population standing at the start of the generation.
struct GaGenerationStats {
  std::vector<double> costs;
  std::vector<double> fitness;
  double best_cost = 0;
};

struct GaTrace {
  std::vector<GaGenerationStats> generations;
};

/// Genetic-algorithm decision selection: feasible random initial population
/// seeded from a_prev, squared min-max fitness, roulette-wheel selection,
/// single-point crossover, per-gene mutation, repair to feasibility, elitism,
/// and early stop on stalled best fitness. Deterministic given params.seed.
DecisionResult ga_decide(const DecisionContext& ctx, const GaParams& params,
                         GaTrace* trace = nullptr);

/// Exhaustive enumeration over all 2^M decisions; exact argmin of the slot
/// cost among feasible vectors. Ties break toward the smallest binary value.
/// Guarded to M <= 20.
DecisionResult brute_force_decide(const DecisionContext& ctx);

enum class EvictionPolicy { Rand, Fifo, Lru, Lfu };

/// Mutable state for the baseline eviction policies.
struct PolicyState {
  std::set<int> deployed;
  std::vector<std::int64_t> admit_stamp;  // -1 when not deployed
  std::vector<std::int64_t> last_access;  // request index of most recent hit/miss
  std::vector<std::int64_t> freq;         // total request count per model
  std::int64_t admit_counter = 0;
  std::int64_t evictions = 0;
  std::int64_t admissions = 0;

  explicit PolicyState(int num_models);

  DeploymentVector to_vector(int num_models) const;
};

/// Admits the missed model, evicting victims one at a time per policy until
/// the budgets hold. A model that does not fit even on an empty edge is
/// served on demand and the state is left unchanged.
void baseline_decide(EvictionPolicy policy, PolicyState& state, int missed_model,
                     const Catalog& catalog, const EdgeConfig& edge,
                     std::mt19937_64& rng);

}  // namespace edgesim
