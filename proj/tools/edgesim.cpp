// Command-line front end: scenario/trace generation, policy runs and
// comparisons, resource/slot sweeps, and GA-vs-oracle gap studies.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgesim/engine.hpp"
#include "edgesim/rng.hpp"

namespace fs = std::filesystem;
using namespace edgesim;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

fs::path out_dir() {
  if (const char* env = std::getenv("EDGESIM_OUT_DIR")) return fs::path(env);
  return fs::current_path();
}

fs::path resolve(const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : out_dir() / path;
}

std::vector<PolicyKind> parse_policies(const std::string& csv) {
  std::vector<PolicyKind> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(parse_policy(tok));
  }
  if (out.empty()) throw ValidationError("no policies given");
  return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
}

void print_warnings(const Scenario& s) {
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
}

struct EdgeFlags {
  double storage = 120.0, gpu = 12.0, energy = 1.0, static_power = 0.3, bandwidth = 10.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--storage", storage, "Edge storage capacity C [GB]");
    cmd->add_option("--gpu", gpu, "Edge GPU memory G [GB]");
    cmd->add_option("--energy", energy, "Edge power budget E [kW]");
    cmd->add_option("--static-power", static_power, "Static power draw [kW]");
    cmd->add_option("--bandwidth", bandwidth, "Cloud-edge link rate B [Gbps]");
  }

  EdgeConfig to_config() const { return {storage, gpu, energy, static_power, bandwidth}; }
};

struct WeightFlags {
  double w = 1.0, mu_l = 1.0, mu_r = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--w", w, "Storage-vs-GPU weight inside the resource cost");
    cmd->add_option("--mu-l", mu_l, "Switching-cost weight");
    cmd->add_option("--mu-r", mu_r, "Resource-cost weight");
  }
};

struct GaFlags {
  GaParams p;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--ga-pop", p.population_k, "GA population size K");
    cmd->add_option("--ga-gens", p.max_generations_n, "GA generation cap N");
    cmd->add_option("--ga-crossover", p.crossover_p1, "Crossover probability p1");
    cmd->add_option("--ga-mutation", p.mutation_p2, "Per-gene mutation probability p2");
    cmd->add_option("--ga-patience", p.patience, "Generations without improvement before stop");
  }
};

void print_summary_table(const std::vector<PolicyRow>& rows) {
  std::cout << std::left << std::setw(8) << "policy" << std::right << std::setw(14)
            << "avg_cost" << std::setw(12) << "miss_rate" << std::setw(16) << "avg_delay_s"
            << std::setw(11) << "evictions" << std::setw(12) << "admissions" << "\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(8) << policy_name(r.policy) << std::right
              << std::fixed << std::setprecision(4) << std::setw(14) << r.metrics.avg_cost
              << std::setw(12) << r.metrics.miss_rate << std::setw(16)
              << r.metrics.avg_service_delay_s << std::setw(11) << r.metrics.evictions
              << std::setw(12) << r.metrics.admissions << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
}

int cmd_gen(int models, int slots, std::uint64_t seed, double zipf_exp, double total_rate,
            const std::string& rates_csv, const EdgeFlags& edge, const WeightFlags& wf,
            const std::string& scenario_out, const std::string& trace_out) {
  if (models < 1) throw ValidationError("--models must be >= 1");
  if (slots < 1) throw ValidationError("--slots must be >= 1");

  Scenario s;
  s.catalog = sample_catalog(models, ProfileRanges{}, seed);
  s.edge = edge.to_config();
  validate_edge(s.edge);
  s.weights = {wf.w, wf.mu_l, wf.mu_r};
  validate_weights(s.weights);
  s.arrival_rates = rates_csv.empty() ? zipf_rates(models, zipf_exp, total_rate)
                                      : parse_doubles(rates_csv);
  if (static_cast<int>(s.arrival_rates.size()) != models) {
    throw ValidationError("--rates length must equal --models");
  }

  const RequestTrace trace = generate_trace(s.arrival_rates, slots, derive_seed(seed, 1));

  const std::string scenario_bytes = scenario_to_json(s);
  const std::string trace_bytes = trace_to_json(trace);
  write_file(resolve(scenario_out), scenario_bytes);
  write_file(resolve(trace_out), trace_bytes);

  std::cout << "scenario " << resolve(scenario_out).string() << " digest "
            << content_digest(scenario_bytes) << "\n";
  std::cout << "trace    " << resolve(trace_out).string() << " digest "
            << content_digest(trace_bytes) << "\n";
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& trace_path,
            const std::string& policies_csv, std::uint64_t seed, const std::string& beta_mode,
            const GaFlags& ga, const WeightFlags& wf, bool wf_set, double storage,
            double gpu, bool force_admit, const std::string& csv_out,
            const std::string& json_out) {
  Scenario s = load_scenario(resolve(scenario_path));
  print_warnings(s);
  RequestTrace trace = load_trace(resolve(trace_path));
  if (storage > 0) s.edge.storage_gb = storage;
  if (gpu > 0) s.edge.gpu_gb = gpu;
  if (wf_set) {
    s.weights = {wf.w, wf.mu_l, wf.mu_r};
    validate_weights(s.weights);
  }

  RunOptions opt;
  opt.ga = ga.p;
  opt.seed = seed;
  opt.force_admit_missed = force_admit;
  if (beta_mode == "oracle") {
    opt.beta_mode = BetaMode::Oracle;
  } else if (beta_mode == "estimated") {
    opt.beta_mode = BetaMode::Estimated;
  } else {
    throw ValidationError("--beta-mode must be 'estimated' or 'oracle'");
  }

  const std::vector<PolicyKind> policies = parse_policies(policies_csv);
  std::vector<SimulationRun> runs;
  std::vector<PolicyRow> rows;
  for (PolicyKind p : policies) {
    RunOptions per = opt;
    per.policy = p;
    per.seed = derive_seed(seed, static_cast<std::uint64_t>(p) + 0x706f6cULL);
    runs.push_back(run(s, trace, per));
    rows.push_back({p, runs.back().metrics});
  }

  print_summary_table(rows);
  if (!csv_out.empty()) write_file(resolve(csv_out), per_slot_csv(runs));
  if (!json_out.empty()) write_file(resolve(json_out), summary_json(rows));
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& axis,
              const std::string& values_csv, int repeats, int slots,
              const std::string& policies_csv, std::uint64_t seed, const GaFlags& ga,
              const std::string& csv_out, const std::string& agg_out) {
  const Scenario base = load_scenario(resolve(scenario_path));
  print_warnings(base);
  if (base.arrival_rates.empty()) {
    throw ValidationError("sweep requires arrival_rates in the scenario file");
  }
  const std::vector<double> values = parse_doubles(values_csv);
  if (values.empty()) throw ValidationError("--values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ValidationError("--values must be strictly increasing");
    }
  }
  if (repeats < 1) throw ValidationError("--repeats must be >= 1");
  const std::vector<PolicyKind> policies = parse_policies(policies_csv);

  struct Row {
    double axis_value;
    PolicyKind policy;
    std::uint64_t seed;
    SummaryMetrics m;
  };
  std::vector<Row> rows;

  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    const double v = values[vi];
    Scenario s = base;
    int t_slots = slots;
    std::vector<double> rates = base.arrival_rates;
    if (axis == "storage_gb") {
      s.edge.storage_gb = v;
    } else if (axis == "gpu_gb") {
      s.edge.gpu_gb = v;
    } else if (axis == "t_slots") {
      t_slots = static_cast<int>(v);
    } else if (axis == "total_rate") {
      const double sum = std::accumulate(rates.begin(), rates.end(), 0.0);
      if (sum <= 0) throw ValidationError("scenario arrival_rates sum to zero");
      for (auto& r : rates) r *= v / sum;
    } else {
      throw ValidationError("--axis must be one of storage_gb|gpu_gb|t_slots|total_rate");
    }

    for (int rep = 0; rep < repeats; ++rep) {
      const std::uint64_t rep_seed = derive_seed(seed, vi * 1000 + static_cast<std::uint64_t>(rep));
      const RequestTrace trace = generate_trace(rates, t_slots, derive_seed(rep_seed, 1));
      RunOptions opt;
      opt.ga = ga.p;
      opt.seed = rep_seed;
      for (const PolicyRow& pr : compare(s, trace, policies, opt)) {
        rows.push_back({v, pr.policy, rep_seed, pr.metrics});
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.axis_value != b.axis_value) return a.axis_value < b.axis_value;
    if (a.policy != b.policy) return policy_name(a.policy) < policy_name(b.policy);
    return a.seed < b.seed;
  });

  std::ostringstream os;
  os.precision(12);
  os << "axis,policy,seed,avg_cost,miss_rate,avg_service_delay_s\n";
  for (const auto& r : rows) {
    os << r.axis_value << ',' << policy_name(r.policy) << ',' << r.seed << ','
       << r.m.avg_cost << ',' << r.m.miss_rate << ',' << r.m.avg_service_delay_s << '\n';
  }
  write_file(resolve(csv_out), os.str());

  // Aggregate: mean and stddev per (axis value, policy).
  std::map<std::pair<double, std::string>, std::vector<double>> agg;
  for (const auto& r : rows) {
    agg[{r.axis_value, policy_name(r.policy)}].push_back(r.m.avg_cost);
  }
  std::ostringstream as;
  as.precision(12);
  as << "axis,policy,mean_avg_cost,stddev_avg_cost,n\n";
  for (const auto& [key, v] : agg) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    as << key.first << ',' << key.second << ',' << mean << ',' << sd << ',' << v.size()
       << '\n';
  }
  write_file(resolve(agg_out), as.str());
  std::cout << "sweep rows: " << rows.size() << " -> " << resolve(csv_out).string() << "\n";
  std::cout << "aggregate  -> " << resolve(agg_out).string() << "\n";
  return 0;
}

int cmd_oracle_gap(int models, int contexts, std::uint64_t seed, const EdgeFlags& edge,
                   const WeightFlags& wf, const GaFlags& ga, double threshold) {
  if (models > 20) throw GuardError("oracle gap study guarded to --models <= 20");
  if (contexts < 1) throw ValidationError("--contexts must be >= 1");
  const EdgeConfig ec = edge.to_config();
  validate_edge(ec);
  // Degenerate all-zero weights are allowed here: every decision then costs
  // zero and the gap is trivially zero.
  const CostWeights weights{wf.w, wf.mu_l, wf.mu_r};

  constexpr double kEps = 1e-9;
  int within = 0, ga_below_brute = 0;
  double gap_sum = 0, gap_max = 0;

  for (int i = 0; i < contexts; ++i) {
    const std::uint64_t ctx_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const Catalog cat = sample_catalog(models, ProfileRanges{}, ctx_seed);
    auto rng = make_rng(derive_seed(ctx_seed, 7));

    DecisionContext ctx;
    ctx.catalog = &cat;
    ctx.edge = &ec;
    ctx.weights = weights;
    ctx.a_prev = DeploymentVector(models);
    std::bernoulli_distribution coin(0.5);
    for (auto& b : ctx.a_prev.bits) b = coin(rng) ? 1 : 0;
    while (!check(ctx.a_prev, cat, ec).feasible) {
      std::vector<int> set_bits;
      for (int m = 0; m < models; ++m) {
        if (ctx.a_prev.bits[static_cast<std::size_t>(m)]) set_bits.push_back(m);
      }
      std::uniform_int_distribution<std::size_t> pick(0, set_bits.size() - 1);
      ctx.a_prev.bits[static_cast<std::size_t>(set_bits[pick(rng)])] = 0;
    }
    std::uniform_real_distribution<double> lambda(0.2, 2.0);
    ctx.beta.beta.resize(static_cast<std::size_t>(models));
    for (auto& b : ctx.beta.beta) b = 1.0 / lambda(rng);

    const DecisionResult brute = brute_force_decide(ctx);
    GaParams p = ga.p;
    p.seed = derive_seed(ctx_seed, 11);
    const DecisionResult heur = ga_decide(ctx, p);

    const double gap =
        (heur.cost.total - brute.cost.total) / std::max(brute.cost.total, kEps);
    if (gap < -kEps) ++ga_below_brute;
    if (gap <= threshold) ++within;
    gap_sum += std::max(gap, 0.0);
    gap_max = std::max(gap_max, gap);
  }

  const double frac = static_cast<double>(within) / static_cast<double>(contexts);
  std::cout << "contexts            " << contexts << "\n";
  std::cout << "gap <= " << threshold * 100 << "%        " << within << " (" << frac * 100
            << "%)\n";
  std::cout << "mean gap            " << gap_sum / contexts << "\n";
  std::cout << "max gap             " << gap_max << "\n";
  std::cout << "ga below oracle     " << ga_below_brute << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge deployment simulator for generative-AI model profiles"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a scenario and a request trace");
  int gen_models = 10, gen_slots = 100;
  std::uint64_t gen_seed = 0;
  double gen_zipf = 1.0, gen_total_rate = 5.0;
  std::string gen_rates, gen_scenario = "scenario.json", gen_trace = "trace.json";
  bool table1 = false;
  EdgeFlags gen_edge;
  WeightFlags gen_weights;
  gen->add_option("--models", gen_models, "Number of model profiles");
  gen->add_option("--slots", gen_slots, "Number of time slots");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_flag("--table1-ranges", table1, "Sample profiles from the default ranges (always on)");
  gen->add_option("--zipf", gen_zipf, "Zipf popularity exponent for arrival rates");
  gen->add_option("--total-rate", gen_total_rate, "Total expected requests per slot");
  gen->add_option("--rates", gen_rates, "Explicit per-model rates (comma separated)");
  gen->add_option("--scenario", gen_scenario, "Scenario output path");
  gen->add_option("--trace", gen_trace, "Trace output path");
  gen_edge.add_to(gen);
  gen_weights.add_to(gen);

  // run
  auto* runc = app.add_subcommand("run", "Run policies against a scenario and trace");
  std::string run_scenario = "scenario.json", run_trace = "trace.json";
  std::string run_policies = "ga", run_beta = "estimated", run_csv, run_json;
  std::uint64_t run_seed = 0;
  double run_storage = -1, run_gpu = -1;
  bool run_force = false;
  GaFlags run_ga;
  WeightFlags run_weights;
  runc->add_option("--scenario", run_scenario, "Scenario file");
  runc->add_option("--trace", run_trace, "Trace file");
  runc->add_option("--policies", run_policies, "Comma list of ga,brute,rand,fifo,lru,lfu");
  runc->add_option("--seed", run_seed, "Master seed");
  runc->add_option("--beta-mode", run_beta, "'estimated' or 'oracle'");
  runc->add_option("--storage", run_storage, "Override edge storage [GB]");
  runc->add_option("--gpu", run_gpu, "Override edge GPU memory [GB]");
  runc->add_flag("--force-admit-missed", run_force, "Pin missed models to deployed in GA/brute");
  runc->add_option("--csv", run_csv, "Per-slot CSV output path");
  runc->add_option("--json", run_json, "Summary JSON output path");
  run_ga.add_to(runc);
  auto* wopt = runc->add_option("--w", run_weights.w, "Storage-vs-GPU weight");
  auto* mlopt = runc->add_option("--mu-l", run_weights.mu_l, "Switching-cost weight");
  auto* mropt = runc->add_option("--mu-r", run_weights.mu_r, "Resource-cost weight");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep an axis and record cost statistics");
  std::string sw_scenario = "scenario.json", sw_axis = "storage_gb", sw_values;
  std::string sw_policies = "ga,rand,fifo,lru,lfu";
  std::string sw_csv = "sweep.csv", sw_agg = "sweep_agg.csv";
  int sw_repeats = 3, sw_slots = 100;
  std::uint64_t sw_seed = 0;
  GaFlags sw_ga;
  sweep->add_option("--scenario", sw_scenario, "Base scenario file (needs arrival_rates)");
  sweep->add_option("--axis", sw_axis, "storage_gb|gpu_gb|t_slots|total_rate");
  sweep->add_option("--values", sw_values, "Comma list, strictly increasing")->required();
  sweep->add_option("--repeats", sw_repeats, "Seeds per axis point");
  sweep->add_option("--slots", sw_slots, "Slots per run (unless axis is t_slots)");
  sweep->add_option("--policies", sw_policies, "Comma list of policies");
  sweep->add_option("--seed", sw_seed, "Master seed");
  sweep->add_option("--csv", sw_csv, "Per-run rows output path");
  sweep->add_option("--agg", sw_agg, "Aggregated mean/stddev output path");
  sw_ga.add_to(sweep);

  // oracle-gap
  auto* gap = app.add_subcommand("oracle-gap", "Compare GA against the exhaustive oracle");
  int gap_models = 10, gap_contexts = 200;
  std::uint64_t gap_seed = 0;
  double gap_threshold = 0.02;
  EdgeFlags gap_edge;
  WeightFlags gap_weights;
  GaFlags gap_ga;
  gap->add_option("--models", gap_models, "Catalog size per context (<= 20)");
  gap->add_option("--contexts", gap_contexts, "Number of random contexts");
  gap->add_option("--seed", gap_seed, "Master seed");
  gap->add_option("--threshold", gap_threshold, "Relative gap threshold");
  gap_edge.add_to(gap);
  gap_weights.add_to(gap);
  gap_ga.add_to(gap);

  try {
    app.parse(argc, argv);
    if (gen->parsed()) {
      return cmd_gen(gen_models, gen_slots, gen_seed, gen_zipf, gen_total_rate, gen_rates,
                     gen_edge, gen_weights, gen_scenario, gen_trace);
    }
    if (runc->parsed()) {
      const bool weights_set = wopt->count() || mlopt->count() || mropt->count();
      return cmd_run(run_scenario, run_trace, run_policies, run_seed, run_beta, run_ga,
                     run_weights, weights_set, run_storage, run_gpu, run_force, run_csv,
                     run_json);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sw_scenario, sw_axis, sw_values, sw_repeats, sw_slots, sw_policies,
                       sw_seed, sw_ga, sw_csv, sw_agg);
    }
    if (gap->parsed()) {
      return cmd_oracle_gap(gap_models, gap_contexts, gap_seed, gap_edge, gap_weights,
                            gap_ga, gap_threshold);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
