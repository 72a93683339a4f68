#include "edgesim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "edgesim/rng.hpp"
#include "json.hpp"

namespace edgesim {

namespace {
using json = nlohmann::ordered_json;
}

RequestTrace generate_trace(const std::vector<double>& rates, int t_slots,
                            std::uint64_t seed) {
  if (t_slots < 1) {
    throw ValidationError("generate_trace: t_slots must be >= 1");
  }
  for (double r : rates) {
    if (!std::isfinite(r) || r < 0.0) {
      throw ValidationError("generate_trace: arrival rates must be finite and >= 0");
    }
  }

  auto rng = make_rng(seed);
  RequestTrace trace;
  trace.rates = rates;
  trace.seed = seed;
  trace.slots.resize(static_cast<std::size_t>(t_slots));

  const int m_count = static_cast<int>(rates.size());
  for (auto& slot : trace.slots) {
    for (int m = 0; m < m_count; ++m) {
      const double lambda = rates[static_cast<std::size_t>(m)];
      if (lambda == 0.0) continue;
      std::poisson_distribution<int> pois(lambda);
      const int n = pois(rng);
      slot.insert(slot.end(), static_cast<std::size_t>(n), m);
    }
    std::shuffle(slot.begin(), slot.end(), rng);
  }
  return trace;
}

std::string trace_to_json(const RequestTrace& t) {
  json doc;
  doc["rates"] = t.rates;
  doc["seed"] = t.seed;
  doc["slots"] = t.slots;
  return doc.dump() + "\n";
}

RequestTrace parse_trace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("trace parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rates") || !doc.contains("seed") ||
      !doc.contains("slots")) {
    throw ParseError("trace requires 'rates', 'seed', and 'slots'");
  }
  RequestTrace t;
  t.rates = doc["rates"].get<std::vector<double>>();
  t.seed = doc["seed"].get<std::uint64_t>();
  t.slots = doc["slots"].get<std::vector<std::vector<int>>>();
  const int m_count = t.num_models();
  for (const auto& slot : t.slots) {
    for (int id : slot) {
      if (id < 0 || id >= m_count) {
        throw ValidationError("trace contains model id " + std::to_string(id) +
                              " out of range");
      }
    }
  }
  if (t.slots.empty()) {
    throw ValidationError("trace must contain at least one slot");
  }
  return t;
}

RequestTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

void write_trace(const RequestTrace& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
  out << trace_to_json(t);
}

ActiveCycleEstimator::ActiveCycleEstimator(int num_models, double alpha)
    : counts(static_cast<std::size_t>(num_models), 0), smoothing(alpha) {
  if (num_models < 1) {
    throw ValidationError("estimator requires at least one model");
  }
  if (!(alpha > 0.0)) {
    throw ValidationError("estimator smoothing constant must be positive");
  }
}

void ActiveCycleEstimator::observe(const std::vector<int>& slot_requests) {
  for (int id : slot_requests) {
    if (id < 0 || id >= static_cast<int>(counts.size())) {
      throw ValidationError("observe: model id " + std::to_string(id) + " out of range");
    }
    ++counts[static_cast<std::size_t>(id)];
  }
  ++slots_seen;
}

ActiveCycles ActiveCycleEstimator::estimate_beta() const {
  ActiveCycles b;
  b.beta.reserve(counts.size());
  const double denom = static_cast<double>(slots_seen) + smoothing;
  for (auto c : counts) {
    const double lambda_hat = (static_cast<double>(c) + smoothing) / denom;
    b.beta.push_back(1.0 / lambda_hat);
  }
  return b;
}

ActiveCycles oracle_beta(const std::vector<double>& rates) {
  ActiveCycles b;
  b.beta.reserve(rates.size());
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ValidationError("oracle_beta: all rates must be strictly positive");
    }
    b.beta.push_back(1.0 / r);
  }
  return b;
}

std::vector<double> zipf_rates(int num_models, double exponent, double total_rate) {
  if (num_models < 1) {
    throw ValidationError("zipf_rates: num_models must be >= 1");
  }
  if (!(total_rate > 0.0)) {
    throw ValidationError("zipf_rates: total_rate must be positive");
  }
  std::vector<double> weights(static_cast<std::size_t>(num_models));
  double sum = 0.0;
  for (int i = 0; i < num_models; ++i) {
    weights[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -exponent);
    sum += weights[static_cast<std::size_t>(i)];
  }
  for (auto& w : weights) w *= total_rate / sum;
  return weights;
}

}  // namespace edgesim
