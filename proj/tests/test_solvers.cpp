#include <random>

#include "doctest.h"
#include "edgesim/rng.hpp"
#include "edgesim/solvers.hpp"
#include "helpers.hpp"

using namespace edgesim;
using test::make_model;
using test::TwoModelInstance;

namespace {

DecisionContext two_model_ctx(const TwoModelInstance& inst) {
  DecisionContext ctx;
  ctx.a_prev.bits = {1, 1};
  ctx.beta = inst.beta;
  ctx.catalog = &inst.catalog;
  ctx.edge = &inst.edge;
  ctx.weights = inst.weights;
  return ctx;
}

DecisionContext random_ctx(const Catalog& cat, const EdgeConfig& edge,
                           const CostWeights& wt, std::uint64_t seed) {
  DecisionContext ctx;
  ctx.catalog = &cat;
  ctx.edge = &edge;
  ctx.weights = wt;
  auto rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  ctx.a_prev = DeploymentVector(cat.size());
  for (auto& b : ctx.a_prev.bits) b = coin(rng) ? 1 : 0;
  while (!check(ctx.a_prev, cat, edge).feasible) {
    std::vector<int> set_bits;
    for (int m = 0; m < cat.size(); ++m) {
      if (ctx.a_prev.bits[m]) set_bits.push_back(m);
    }
    std::uniform_int_distribution<std::size_t> pick(0, set_bits.size() - 1);
    ctx.a_prev.bits[set_bits[pick(rng)]] = 0;
  }
  std::uniform_real_distribution<double> lam(0.2, 2.0);
  for (int m = 0; m < cat.size(); ++m) ctx.beta.beta.push_back(1.0 / lam(rng));
  return ctx;
}

}  // namespace

TEST_CASE("brute force finds the hand-verified optimum on the two-model instance") {
  TwoModelInstance inst;
  const DecisionResult r = brute_force_decide(two_model_ctx(inst));
  CHECK(r.decision.bits == std::vector<std::uint8_t>{0, 0});
  CHECK(r.cost.total == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("brute force ties resolve to the smallest binary value") {
  TwoModelInstance inst;
  DecisionContext ctx = two_model_ctx(inst);
  ctx.weights = {1.0, 0.0, 0.0};  // every decision costs zero
  const DecisionResult r = brute_force_decide(ctx);
  CHECK(r.decision.bits == std::vector<std::uint8_t>{0, 0});
  CHECK(r.cost.total == 0.0);
}

TEST_CASE("with mu_r = 0 keeping a deployed model is free and optimal") {
  Catalog cat;
  cat.models = {make_model(0, 10, 2, 0.1, 5, 1)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  DecisionContext ctx;
  ctx.a_prev.bits = {1};
  ctx.beta.beta = {2.0};
  ctx.catalog = &cat;
  ctx.edge = &edge;
  ctx.weights = {1.0, 1.0, 0.0};
  const DecisionResult r = brute_force_decide(ctx);
  CHECK(r.decision.bits == std::vector<std::uint8_t>{1});
  CHECK(r.cost.total == 0.0);
}

TEST_CASE("brute force guard trips above M = 20") {
  Catalog cat = sample_catalog(21, ProfileRanges{}, 3);
  EdgeConfig edge{120, 12, 1.0, 0.3, 10};
  DecisionContext ctx;
  ctx.a_prev = DeploymentVector::zeros(21);
  ctx.beta.beta.assign(21, 1.0);
  ctx.catalog = &cat;
  ctx.edge = &edge;
  CHECK_THROWS_AS(brute_force_decide(ctx), GuardError);
}

TEST_CASE("GA finds the two-model optimum on every seed") {
  TwoModelInstance inst;
  DecisionContext ctx = two_model_ctx(inst);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GaParams p;
    p.seed = seed;
    const DecisionResult r = ga_decide(ctx, p);
    CHECK(r.decision.bits == std::vector<std::uint8_t>{0, 0});
    CHECK(r.cost.total == doctest::Approx(7.0).epsilon(1e-12));
  }
}

TEST_CASE("GA returns the empty decision when the only model does not fit") {
  Catalog cat;
  cat.models = {make_model(0, 50, 2, 0.1, 5, 1)};
  EdgeConfig edge{40, 10, 1.0, 0.3, 10};  // s > C
  DecisionContext ctx;
  ctx.a_prev = DeploymentVector::zeros(1);
  ctx.beta.beta = {1.0};
  ctx.catalog = &cat;
  ctx.edge = &edge;
  GaParams p;
  const DecisionResult r = ga_decide(ctx, p);
  CHECK(r.decision.bits == std::vector<std::uint8_t>{0});
}

TEST_CASE("GA is deterministic in its seed and always feasible") {
  const Catalog cat = sample_catalog(10, ProfileRanges{}, 12);
  const EdgeConfig edge{120, 12, 1.0, 0.3, 10};
  const CostWeights wt{1.0, 1.0, 1.0};
  const DecisionContext ctx = random_ctx(cat, edge, wt, 55);
  GaParams p;
  p.seed = 99;
  const DecisionResult a = ga_decide(ctx, p);
  const DecisionResult b = ga_decide(ctx, p);
  CHECK(a.decision.bits == b.decision.bits);
  CHECK(a.cost.total == b.cost.total);
  CHECK(a.generations_run == b.generations_run);
  CHECK(check(a.decision, cat, edge).feasible);
}

TEST_CASE("GA never beats the exhaustive oracle and is usually within 2%") {
  const EdgeConfig edge{120, 12, 1.0, 0.3, 10};
  const CostWeights wt{1.0, 1.0, 1.0};
  int within = 0;
  const int trials = 50;
  for (int i = 0; i < trials; ++i) {
    const Catalog cat = sample_catalog(10, ProfileRanges{}, derive_seed(600, i));
    const DecisionContext ctx = random_ctx(cat, edge, wt, derive_seed(601, i));
    const DecisionResult brute = brute_force_decide(ctx);
    GaParams p;
    p.seed = derive_seed(602, i);
    const DecisionResult ga = ga_decide(ctx, p);
    CHECK(ga.cost.total >= brute.cost.total - 1e-9);
    if (ga.cost.total <= brute.cost.total * 1.02 + 1e-9) ++within;
  }
  CHECK(within >= static_cast<int>(trials * 0.95));
}

TEST_CASE("forced admission pins the missed model into the decision") {
  Catalog cat;
  cat.models = {make_model(0, 10, 2, 0.1, 5, 1), make_model(1, 20, 4, 0.1, 10, 2)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  DecisionContext ctx;
  ctx.a_prev = DeploymentVector::zeros(2);
  ctx.beta.beta = {2.0, 4.0};
  ctx.catalog = &cat;
  ctx.edge = &edge;
  ctx.weights = {1.0, 1.0, 1.0};
  ctx.forced_on = {1};
  const DecisionResult b = brute_force_decide(ctx);
  CHECK(b.decision.bits[1] == 1);
  GaParams p;
  const DecisionResult g = ga_decide(ctx, p);
  CHECK(g.decision.bits[1] == 1);
}

TEST_CASE("LRU evicts the least recently accessed model") {
  Catalog cat;
  cat.models = {make_model(0, 50, 5, 0.1, 1, 1), make_model(1, 50, 5, 0.1, 1, 1),
                make_model(2, 50, 5, 0.1, 1, 1)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};  // room for two models
  PolicyState st(3);
  auto rng = make_rng(0);
  st.deployed = {0, 1};
  st.admit_stamp = {0, 1, -1};
  st.admit_counter = 2;
  st.last_access = {5, 9, -1};
  baseline_decide(EvictionPolicy::Lru, st, 2, cat, edge, rng);
  CHECK(st.deployed == std::set<int>{1, 2});
}

TEST_CASE("FIFO evicts the longest-deployed model") {
  Catalog cat;
  cat.models = {make_model(0, 50, 5, 0.1, 1, 1), make_model(1, 50, 5, 0.1, 1, 1),
                make_model(2, 50, 5, 0.1, 1, 1)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  PolicyState st(3);
  auto rng = make_rng(0);
  st.deployed = {0, 1};
  st.admit_stamp = {1, 0, -1};  // model 1 admitted first
  st.admit_counter = 2;
  baseline_decide(EvictionPolicy::Fifo, st, 2, cat, edge, rng);
  CHECK(st.deployed == std::set<int>{0, 2});
}

TEST_CASE("LFU evicts the least frequently requested model") {
  Catalog cat;
  cat.models = {make_model(0, 50, 5, 0.1, 1, 1), make_model(1, 50, 5, 0.1, 1, 1),
                make_model(2, 50, 5, 0.1, 1, 1)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  PolicyState st(3);
  auto rng = make_rng(0);
  st.deployed = {0, 1};
  st.admit_stamp = {0, 1, -1};
  st.admit_counter = 2;
  st.freq = {7, 3, 0};
  baseline_decide(EvictionPolicy::Lfu, st, 2, cat, edge, rng);
  CHECK(st.deployed == std::set<int>{0, 2});
}

TEST_CASE("a model too large for an empty edge is served without admission") {
  Catalog cat;
  cat.models = {make_model(0, 500, 5, 0.1, 1, 1)};
  EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  PolicyState st(1);
  auto rng = make_rng(0);
  baseline_decide(EvictionPolicy::Lru, st, 0, cat, edge, rng);
  CHECK(st.deployed.empty());
  CHECK(st.admissions == 0);
}

TEST_CASE("baseline states stay feasible through random churn") {
  const Catalog cat = sample_catalog(10, ProfileRanges{}, 21);
  const EdgeConfig edge{80, 8, 1.0, 0.3, 10};
  for (EvictionPolicy pol : {EvictionPolicy::Rand, EvictionPolicy::Fifo, EvictionPolicy::Lru,
                             EvictionPolicy::Lfu}) {
    PolicyState st(10);
    auto rng = make_rng(33);
    std::uniform_int_distribution<int> pick(0, 9);
    std::int64_t req = 0;
    for (int i = 0; i < 500; ++i) {
      const int m = pick(rng);
      ++st.freq[m];
      st.last_access[m] = req++;
      if (!st.deployed.count(m)) baseline_decide(pol, st, m, cat, edge, rng);
      CHECK(check(st.to_vector(10), cat, edge).feasible);
    }
  }
}

TEST_CASE("within each generation fitness ordering reverses cost ordering") {
  const Catalog cat = sample_catalog(10, ProfileRanges{}, 71);
  const EdgeConfig edge{120, 12, 1.0, 0.3, 10};
  const DecisionContext ctx = random_ctx(cat, edge, CostWeights{1, 1, 1}, 72);
  GaParams p;
  p.seed = 5;
  GaTrace trace;
  ga_decide(ctx, p, &trace);
  REQUIRE(!trace.generations.empty());
  for (const auto& gen : trace.generations) {
    REQUIRE(gen.costs.size() == gen.fitness.size());
    double best_fit = -1, best_fit_cost = 0;
    double min_cost = gen.costs[0];
    for (std::size_t i = 0; i < gen.costs.size(); ++i) {
      min_cost = std::min(min_cost, gen.costs[i]);
      if (gen.fitness[i] > best_fit) {
        best_fit = gen.fitness[i];
        best_fit_cost = gen.costs[i];
      }
      for (std::size_t j = 0; j < gen.costs.size(); ++j) {
        if (gen.costs[i] < gen.costs[j]) CHECK(gen.fitness[i] >= gen.fitness[j]);
      }
    }
    // the argmax-fitness individual is an argmin-cost individual
    CHECK(best_fit_cost == doctest::Approx(min_cost).epsilon(1e-12));
  }
}

TEST_CASE("elitism keeps the population's best cost non-increasing") {
  const Catalog cat = sample_catalog(12, ProfileRanges{}, 81);
  const EdgeConfig edge{100, 10, 1.0, 0.3, 10};
  const DecisionContext ctx = random_ctx(cat, edge, CostWeights{1, 1, 1}, 82);
  GaParams p;
  p.seed = 6;
  GaTrace trace;
  ga_decide(ctx, p, &trace);
  for (std::size_t g = 1; g < trace.generations.size(); ++g) {
    CHECK(trace.generations[g].best_cost <= trace.generations[g - 1].best_cost + 1e-12);
  }
}

TEST_CASE("GA parameter validation") {
  TwoModelInstance inst;
  DecisionContext ctx = two_model_ctx(inst);
  GaParams p;
  p.population_k = 1;
  CHECK_THROWS_AS(ga_decide(ctx, p), ValidationError);
  p = GaParams{};
  p.mutation_p2 = 1.5;
  CHECK_THROWS_AS(ga_decide(ctx, p), ValidationError);
}
