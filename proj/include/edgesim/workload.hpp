#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgesim/cost.hpp"

namespace edgesim {

/// Per-slot ordered request sequences, replayable byte-for-byte from
/// (rates, t_slots, seed).
struct RequestTrace {
  std::vector<std::vector<int>> slots;  // model ids in arrival order
  std::vector<double> rates;            // lambda per model, requests per slot
  std::uint64_t seed = 0;

  int num_slots() const { return static_cast<int>(slots.size()); }
  int num_models() const { return static_cast<int>(rates.size()); }
};

/// Per slot and model the request count is Poisson(lambda_m); the within-slot
/// order is a seeded shuffle of the resulting multiset.
RequestTrace generate_trace(const std::vector<double>& rates, int t_slots,
                            std::uint64_t seed);

std::string trace_to_json(const RequestTrace& t);
RequestTrace parse_trace(const std::string& text);
RequestTrace load_trace(const std::filesystem::path& path);
void write_trace(const RequestTrace& t, const std::filesystem::path& path);

/// Accumulates request history and estimates active cycles as the reciprocal
/// of the smoothed per-slot arrival rate.
struct ActiveCycleEstimator {
  std::vector<std::int64_t> counts;
  std::int64_t slots_seen = 0;
  double smoothing = 1.0;  // additive constant, keeps beta finite for unseen models

  explicit ActiveCycleEstimator(int num_models, double alpha = 1.0);

  void observe(const std::vector<int>& slot_requests);
  ActiveCycles estimate_beta() const;
};

/// Ground-truth active cycles beta_m = 1 / lambda_m; requires positive rates.
ActiveCycles oracle_beta(const std::vector<double>& rates);

/// Zipf popularity rates over m models: rate_i proportional to (i+1)^-exponent,
/// scaled so the rates sum to total_rate.
std::vector<double> zipf_rates(int num_models, double exponent, double total_rate);

}  // namespace edgesim
