#include "edgesim/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgesim/rng.hpp"

namespace edgesim {

namespace {

bool is_feasible(const DeploymentVector& a, const Catalog& c, const EdgeConfig& e) {
  return check(a, c, e).feasible;
}

// Drops pinned ids from the back until the pins alone fit on an empty edge.
std::vector<int> normalize_pins(const DecisionContext& ctx) {
  std::vector<int> pins = ctx.forced_on;
  std::sort(pins.begin(), pins.end());
  pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
  while (!pins.empty()) {
    DeploymentVector v(ctx.catalog->size());
    for (int m : pins) v.bits[static_cast<std::size_t>(m)] = 1;
    if (is_feasible(v, *ctx.catalog, *ctx.edge)) break;
    pins.pop_back();
  }
  return pins;
}

// Clears randomly chosen non-pinned set bits until the vector is feasible.
void repair(DeploymentVector& a, const DecisionContext& ctx, const std::vector<int>& pins,
            std::mt19937_64& rng) {
  for (int m : pins) a.bits[static_cast<std::size_t>(m)] = 1;
  while (!is_feasible(a, *ctx.catalog, *ctx.edge)) {
    std::vector<int> clearable;
    for (int m = 0; m < a.size(); ++m) {
      if (a.bits[static_cast<std::size_t>(m)] &&
          !std::binary_search(pins.begin(), pins.end(), m)) {
        clearable.push_back(m);
      }
    }
    if (clearable.empty()) {
      throw ValidationError(
          "no feasible deployment constructible: even the empty decision violates a "
          "budget");
    }
    std::uniform_int_distribution<std::size_t> pick(0, clearable.size() - 1);
    a.bits[static_cast<std::size_t>(clearable[pick(rng)])] = 0;
  }
}

double eval_cost(const DeploymentVector& a, const DecisionContext& ctx) {
  return slot_cost(ctx.a_prev, a, *ctx.catalog, *ctx.edge, ctx.beta, ctx.weights).total;
}

}  // namespace

void GaParams::validate() const {
  if (population_k < 2) throw ValidationError("ga: population_k must be >= 2");
  if (max_generations_n < 1) throw ValidationError("ga: max_generations_n must be >= 1");
  if (crossover_p1 < 0.0 || crossover_p1 > 1.0) {
    throw ValidationError("ga: crossover_p1 must be in [0,1]");
  }
  if (mutation_p2 < 0.0 || mutation_p2 > 1.0) {
    throw ValidationError("ga: mutation_p2 must be in [0,1]");
  }
  if (patience < 1) throw ValidationError("ga: patience must be >= 1");
}

void DecisionContext::validate() const {
  if (!catalog || !edge) throw ValidationError("decision context missing catalog or edge");
  const int m = catalog->size();
  if (a_prev.size() != m) throw ValidationError("decision context: a_prev length mismatch");
  if (static_cast<int>(beta.beta.size()) != m) {
    throw ValidationError("decision context: beta length mismatch");
  }
  for (int id : forced_on) {
    if (id < 0 || id >= m) throw ValidationError("decision context: forced id out of range");
  }
}

DecisionResult ga_decide(const DecisionContext& ctx, const GaParams& params,
                         GaTrace* trace) {
  ctx.validate();
  params.validate();
  const int m = ctx.catalog->size();
  const std::vector<int> pins = normalize_pins(ctx);
  auto rng = make_rng(params.seed);

  const int k = params.population_k;
  std::vector<DeploymentVector> pop;
  std::vector<double> cost(static_cast<std::size_t>(k));
  pop.reserve(static_cast<std::size_t>(k));

  // Initial population: flip each gene of the incumbent with probability 1/2,
  // then repair; keeps a_prev-like decisions represented from the start.
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < k; ++i) {
    DeploymentVector ind = ctx.a_prev;
    for (auto& bit : ind.bits) {
      if (coin(rng)) bit = static_cast<std::uint8_t>(1 - bit);
    }
    repair(ind, ctx, pins, rng);
    pop.push_back(std::move(ind));
  }
  for (int i = 0; i < k; ++i) {
    cost[static_cast<std::size_t>(i)] = eval_cost(pop[static_cast<std::size_t>(i)], ctx);
  }

  auto best_index = [&cost, k]() {
    int best = 0;
    for (int i = 1; i < k; ++i) {
      if (cost[static_cast<std::size_t>(i)] < cost[static_cast<std::size_t>(best)]) best = i;
    }
    return best;
  };

  int bi = best_index();
  DeploymentVector best_ever = pop[static_cast<std::size_t>(bi)];
  double best_cost = cost[static_cast<std::size_t>(bi)];

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int generations = 0;
  int stall = 0;

  for (int n = 0; n < params.max_generations_n; ++n) {
    generations = n + 1;

    // Squared min-max fitness over the generation's costs; degenerate
    // generations (all costs equal) get uniform fitness.
    double cmax = cost[0], cmin = cost[0];
    for (int i = 1; i < k; ++i) {
      cmax = std::max(cmax, cost[static_cast<std::size_t>(i)]);
      cmin = std::min(cmin, cost[static_cast<std::size_t>(i)]);
    }
    std::vector<double> fitness(static_cast<std::size_t>(k), 1.0);
    if (cmax > cmin) {
      for (int i = 0; i < k; ++i) {
        const double f = (cmax - cost[static_cast<std::size_t>(i)]) / (cmax - cmin);
        fitness[static_cast<std::size_t>(i)] = f * f;
      }
    }
    double fit_sum = 0.0;
    for (double f : fitness) fit_sum += f;

    if (trace) {
      trace->generations.push_back({cost, fitness, cmin});
    }

    auto roulette = [&]() {
      double r = unit(rng) * fit_sum;
      for (int i = 0; i < k; ++i) {
        r -= fitness[static_cast<std::size_t>(i)];
        if (r <= 0.0) return i;
      }
      return k - 1;
    };

    std::vector<DeploymentVector> next;
    next.reserve(static_cast<std::size_t>(k));
    // Elitism: the generation's best individual carries over unmodified.
    next.push_back(pop[static_cast<std::size_t>(best_index())]);

    while (static_cast<int>(next.size()) < k) {
      const int pa = roulette();
      const int pb = roulette();
      DeploymentVector child = pop[static_cast<std::size_t>(pa)];
      if (unit(rng) < params.crossover_p1 && m > 1) {
        std::uniform_int_distribution<int> cut(1, m - 1);
        const int c = cut(rng);
        const auto& other = pop[static_cast<std::size_t>(pb)];
        std::copy(other.bits.begin() + c, other.bits.end(), child.bits.begin() + c);
      }
      for (auto& bit : child.bits) {
        if (unit(rng) < params.mutation_p2) bit = static_cast<std::uint8_t>(1 - bit);
      }
      repair(child, ctx, pins, rng);
      next.push_back(std::move(child));
    }

    pop = std::move(next);
    for (int i = 0; i < k; ++i) {
      cost[static_cast<std::size_t>(i)] = eval_cost(pop[static_cast<std::size_t>(i)], ctx);
    }

    bi = best_index();
    if (cost[static_cast<std::size_t>(bi)] < best_cost) {
      best_cost = cost[static_cast<std::size_t>(bi)];
      best_ever = pop[static_cast<std::size_t>(bi)];
      stall = 0;
    } else {
      ++stall;
    }
    if (stall >= params.patience) break;
  }

  DecisionResult res;
  res.decision = best_ever;
  res.cost = slot_cost(ctx.a_prev, best_ever, *ctx.catalog, *ctx.edge, ctx.beta, ctx.weights);
  res.generations_run = generations;
  return res;
}

DecisionResult brute_force_decide(const DecisionContext& ctx) {
  ctx.validate();
  const int m = ctx.catalog->size();
  if (m > 20) {
    throw GuardError("brute_force_decide: exhaustive search guarded to M <= 20, got " +
                     std::to_string(m));
  }
  const std::vector<int> pins = normalize_pins(ctx);
  std::uint64_t pin_mask = 0;
  for (int id : pins) pin_mask |= (1ULL << id);

  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  const std::uint64_t limit = 1ULL << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if ((mask & pin_mask) != pin_mask) continue;
    DeploymentVector a = DeploymentVector::from_mask(mask, m);
    if (!is_feasible(a, *ctx.catalog, *ctx.edge)) continue;
    const double c = eval_cost(a, ctx);
    if (!found || c < best_cost) {  // ascending masks, so ties keep the smaller mask
      found = true;
      best_cost = c;
      best_mask = mask;
    }
  }
  if (!found) {
    throw ValidationError("brute_force_decide: no feasible deployment exists");
  }
  DecisionResult res;
  res.decision = DeploymentVector::from_mask(best_mask, m);
  res.cost =
      slot_cost(ctx.a_prev, res.decision, *ctx.catalog, *ctx.edge, ctx.beta, ctx.weights);
  return res;
}

PolicyState::PolicyState(int num_models)
    : admit_stamp(static_cast<std::size_t>(num_models), -1),
      last_access(static_cast<std::size_t>(num_models), -1),
      freq(static_cast<std::size_t>(num_models), 0) {}

DeploymentVector PolicyState::to_vector(int num_models) const {
  DeploymentVector v(num_models);
  for (int m : deployed) v.bits[static_cast<std::size_t>(m)] = 1;
  return v;
}

void baseline_decide(EvictionPolicy policy, PolicyState& state, int missed_model,
                     const Catalog& catalog, const EdgeConfig& edge, std::mt19937_64& rng) {
  const int m_count = catalog.size();
  if (missed_model < 0 || missed_model >= m_count) {
    throw ValidationError("baseline_decide: model id out of range");
  }
  if (state.deployed.count(missed_model)) {
    throw ValidationError("baseline_decide: model " + std::to_string(missed_model) +
                          " is already deployed");
  }

  DeploymentVector alone(m_count);
  alone.bits[static_cast<std::size_t>(missed_model)] = 1;
  if (!is_feasible(alone, catalog, edge)) {
    // Served on demand; never admitted.
    return;
  }

  auto candidate = [&](const std::set<int>& deployed) {
    DeploymentVector v(m_count);
    for (int m : deployed) v.bits[static_cast<std::size_t>(m)] = 1;
    v.bits[static_cast<std::size_t>(missed_model)] = 1;
    return v;
  };

  while (!is_feasible(candidate(state.deployed), catalog, edge)) {
    // Victim per policy; ties break toward the smallest id.
    int victim = -1;
    switch (policy) {
      case EvictionPolicy::Rand: {
        std::vector<int> pool(state.deployed.begin(), state.deployed.end());
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        victim = pool[pick(rng)];
        break;
      }
      case EvictionPolicy::Fifo: {
        std::int64_t oldest = std::numeric_limits<std::int64_t>::max();
        for (int m : state.deployed) {
          if (state.admit_stamp[static_cast<std::size_t>(m)] < oldest) {
            oldest = state.admit_stamp[static_cast<std::size_t>(m)];
            victim = m;
          }
        }
        break;
      }
      case EvictionPolicy::Lru: {
        std::int64_t least = std::numeric_limits<std::int64_t>::max();
        for (int m : state.deployed) {
          if (state.last_access[static_cast<std::size_t>(m)] < least) {
            least = state.last_access[static_cast<std::size_t>(m)];
            victim = m;
          }
        }
        break;
      }
      case EvictionPolicy::Lfu: {
        std::int64_t least = std::numeric_limits<std::int64_t>::max();
        for (int m : state.deployed) {
          if (state.freq[static_cast<std::size_t>(m)] < least) {
            least = state.freq[static_cast<std::size_t>(m)];
            victim = m;
          }
        }
        break;
      }
    }
    state.deployed.erase(victim);
    state.admit_stamp[static_cast<std::size_t>(victim)] = -1;
    ++state.evictions;
  }

  state.deployed.insert(missed_model);
  state.admit_stamp[static_cast<std::size_t>(missed_model)] = state.admit_counter++;
  ++state.admissions;
}

}  // namespace edgesim
