#include "edgesim/engine.hpp"

#include <sstream>

#include "edgesim/rng.hpp"
#include "json.hpp"

namespace edgesim {

namespace {

bool is_baseline(PolicyKind p) {
  return p == PolicyKind::Rand || p == PolicyKind::Fifo || p == PolicyKind::Lru ||
         p == PolicyKind::Lfu;
}

EvictionPolicy to_eviction(PolicyKind p) {
  switch (p) {
    case PolicyKind::Rand: return EvictionPolicy::Rand;
    case PolicyKind::Fifo: return EvictionPolicy::Fifo;
    case PolicyKind::Lru: return EvictionPolicy::Lru;
    case PolicyKind::Lfu: return EvictionPolicy::Lfu;
    default: throw ValidationError("not a baseline policy");
  }
}

double miss_delay(const ModelProfile& m, const EdgeConfig& e) {
  return m.size_gb * 8.0 / e.bandwidth_gbps + m.io_delay_s + m.infer_delay_s;
}

}  // namespace

std::string policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::Ga: return "ga";
    case PolicyKind::Brute: return "brute";
    case PolicyKind::Rand: return "rand";
    case PolicyKind::Fifo: return "fifo";
    case PolicyKind::Lru: return "lru";
    case PolicyKind::Lfu: return "lfu";
  }
  return "?";
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "ga") return PolicyKind::Ga;
  if (name == "brute") return PolicyKind::Brute;
  if (name == "rand") return PolicyKind::Rand;
  if (name == "fifo") return PolicyKind::Fifo;
  if (name == "lru") return PolicyKind::Lru;
  if (name == "lfu") return PolicyKind::Lfu;
  throw ValidationError("unknown policy '" + name + "'");
}

SimulationRun run(const Scenario& scenario, const RequestTrace& trace,
                  const RunOptions& options) {
  const Catalog& catalog = scenario.catalog;
  const EdgeConfig& edge = scenario.edge;
  const int m_count = catalog.size();
  if (trace.num_models() != m_count) {
    throw ValidationError("trace model count does not match the catalog");
  }
  if (options.beta_mode == BetaMode::Oracle) {
    oracle_beta(trace.rates);  // validates positivity up front
  }

  SimulationRun sim;
  sim.policy = options.policy;
  sim.beta_mode = options.beta_mode;
  sim.per_slot.reserve(trace.slots.size());

  DeploymentVector a = DeploymentVector::zeros(m_count);
  ActiveCycleEstimator estimator(m_count);
  PolicyState st(m_count);
  auto baseline_rng = make_rng(derive_seed(options.seed, 0x6261736531ULL));

  double cost_sum = 0.0;
  double delay_sum = 0.0;
  std::int64_t requests = 0, misses = 0, evictions = 0, admissions = 0;
  std::int64_t req_index = 0;

  const int t_slots = trace.num_slots();
  for (int t = 0; t < t_slots; ++t) {
    const auto& slot = trace.slots[static_cast<std::size_t>(t)];
    const DeploymentVector a_prev = a;
    const ActiveCycles beta = options.beta_mode == BetaMode::Oracle
                                  ? oracle_beta(trace.rates)
                                  : estimator.estimate_beta();
    int slot_misses = 0;
    std::vector<int> missed_ids;

    if (is_baseline(options.policy)) {
      const EvictionPolicy policy = to_eviction(options.policy);
      for (int id : slot) {
        const auto i = static_cast<std::size_t>(id);
        ++st.freq[i];
        st.last_access[i] = req_index++;
        ++requests;
        if (st.deployed.count(id)) {
          delay_sum += catalog.models[i].infer_delay_s;
        } else {
          ++misses;
          ++slot_misses;
          delay_sum += miss_delay(catalog.models[i], edge);
          baseline_decide(policy, st, id, catalog, edge, baseline_rng);
        }
      }
      a = st.to_vector(m_count);
    } else {
      for (int id : slot) {
        const auto i = static_cast<std::size_t>(id);
        ++st.freq[i];
        st.last_access[i] = req_index++;
        ++requests;
        if (a.bits[i]) {
          delay_sum += catalog.models[i].infer_delay_s;
        } else {
          ++misses;
          ++slot_misses;
          delay_sum += miss_delay(catalog.models[i], edge);
          missed_ids.push_back(id);
        }
      }
      if (slot_misses > 0) {
        DecisionContext ctx;
        ctx.a_prev = a_prev;
        ctx.beta = beta;
        ctx.catalog = &catalog;
        ctx.edge = &edge;
        ctx.weights = scenario.weights;
        if (options.force_admit_missed) ctx.forced_on = missed_ids;
        if (options.policy == PolicyKind::Ga) {
          GaParams p = options.ga;
          p.seed = derive_seed(options.seed, static_cast<std::uint64_t>(t) + 1);
          a = ga_decide(ctx, p).decision;
        } else {
          a = brute_force_decide(ctx).decision;
        }
      }
    }

    SlotRecord rec;
    rec.decision = a;
    rec.cost = slot_cost(a_prev, a, catalog, edge, beta, scenario.weights);
    rec.misses = slot_misses;
    rec.evictions = static_cast<int>(evicted_set(a_prev, a).size());
    evictions += rec.evictions;
    for (int m = 0; m < m_count; ++m) {
      const auto i = static_cast<std::size_t>(m);
      if (!a_prev.bits[i] && a.bits[i]) ++admissions;
    }
    cost_sum += rec.cost.total;
    sim.per_slot.push_back(std::move(rec));

    estimator.observe(slot);
  }

  sim.metrics.avg_cost = cost_sum / static_cast<double>(t_slots);
  sim.metrics.requests = requests;
  sim.metrics.misses = misses;
  sim.metrics.miss_rate =
      requests > 0 ? static_cast<double>(misses) / static_cast<double>(requests) : 0.0;
  sim.metrics.avg_service_delay_s =
      requests > 0 ? delay_sum / static_cast<double>(requests) : 0.0;
  sim.metrics.evictions = evictions;
  sim.metrics.admissions = admissions;
  return sim;
}

std::vector<PolicyRow> compare(const Scenario& scenario, const RequestTrace& trace,
                               const std::vector<PolicyKind>& policies,
                               const RunOptions& options) {
  if (policies.empty()) {
    throw ValidationError("compare: at least one policy required");
  }
  std::vector<PolicyRow> rows;
  rows.reserve(policies.size());
  for (PolicyKind p : policies) {
    RunOptions opt = options;
    opt.policy = p;
    opt.seed = derive_seed(options.seed, static_cast<std::uint64_t>(p) + 0x706f6cULL);
    rows.push_back({p, run(scenario, trace, opt).metrics});
  }
  return rows;
}

std::string per_slot_csv(const std::vector<SimulationRun>& runs) {
  std::ostringstream os;
  os << "slot,policy,decision_bits,l1_s,l2_s,l3_s,switching,r1_gb,r2_gb,resource,total,"
        "misses,evictions\n";
  os.precision(12);
  for (const auto& sim : runs) {
    for (std::size_t t = 0; t < sim.per_slot.size(); ++t) {
      const auto& r = sim.per_slot[t];
      os << t << ',' << policy_name(sim.policy) << ',' << r.decision.to_string() << ','
         << r.cost.l1_s << ',' << r.cost.l2_s << ',' << r.cost.l3_s << ','
         << r.cost.switching << ',' << r.cost.r1_gb << ',' << r.cost.r2_gb << ','
         << r.cost.resource << ',' << r.cost.total << ',' << r.misses << ','
         << r.evictions << '\n';
    }
  }
  return os.str();
}

std::string summary_json(const std::vector<PolicyRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    doc.push_back({{"policy", policy_name(row.policy)},
                   {"avg_cost", row.metrics.avg_cost},
                   {"miss_rate", row.metrics.miss_rate},
                   {"avg_service_delay_s", row.metrics.avg_service_delay_s},
                   {"evictions", row.metrics.evictions},
                   {"admissions", row.metrics.admissions},
                   {"requests", row.metrics.requests},
                   {"misses", row.metrics.misses}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace edgesim
