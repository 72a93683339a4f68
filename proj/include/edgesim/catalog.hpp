#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgesim {

/// Thrown when an input file cannot be parsed at all.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when parsed values violate a domain invariant. The message names
/// the offending field.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a runtime guard trips, e.g. exhaustive search beyond M = 20.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-model resource/delay descriptor. Units project-wide: GB = 10^9 bytes,
/// power in kW, delays in seconds.
struct ModelProfile {
  int id = 0;              // index into catalog order, 0..M-1
  std::string name;
  double size_gb = 0;      // storage footprint
  double gpu_mem_gb = 0;   // GPU memory footprint when preloaded
  double energy_kw = 0;    // power draw while preloaded
  double io_delay_s = 0;   // disk-to-GPU preloading delay
  double infer_delay_s = 0;
};

/// Edge server budgets and the cloud-edge link rate (Gbps = 10^9 bits/s).
struct EdgeConfig {
  double storage_gb = 0;
  double gpu_gb = 0;
  double energy_kw = 0;    // total power budget, static draw included
  double static_kw = 0;    // workload-independent draw
  double bandwidth_gbps = 0;
};

struct CostWeights {
  double w = 1.0;     // storage-vs-GPU mix inside the resource cost
  double mu_l = 1.0;  // switching-cost weight
  double mu_r = 1.0;  // resource-cost weight
};

struct Catalog {
  std::vector<ModelProfile> models;
  int size() const { return static_cast<int>(models.size()); }
};

struct FieldRange {
  double lo = 0;
  double hi = 0;
};

/// Sampling / validity ranges for each profile field.
struct ProfileRanges {
  FieldRange size_gb{2.0, 50.0};
  FieldRange gpu_mem_gb{1.0, 6.0};
  FieldRange energy_kw{0.0025, 0.5};
  FieldRange io_delay_s{0.3, 60.0};
  FieldRange infer_delay_s{0.05, 30.0};
};

struct Scenario {
  Catalog catalog;
  EdgeConfig edge;
  CostWeights weights;
  std::vector<double> arrival_rates;     // empty when the file omits them
  std::optional<double> slot_length_s;   // carried through, unused by the cost model
  std::vector<std::string> warnings;     // profiles outside the validity ranges
};

/// Loads and validates a scenario JSON file. Unknown keys are rejected.
Scenario load_scenario(const std::filesystem::path& path);

/// Parses scenario JSON from a string (same schema and validation).
Scenario parse_scenario(const std::string& text);

/// Canonical JSON serialization; write_scenario(load_scenario(p)) round-trips.
std::string scenario_to_json(const Scenario& s);
void write_scenario(const Scenario& s, const std::filesystem::path& path);

/// Synthesizes m profiles, each field independent uniform within its range.
/// Pure function of (m, ranges, seed).
Catalog sample_catalog(int m, const ProfileRanges& ranges, std::uint64_t seed);

void validate_catalog(const Catalog& c, const ProfileRanges& ranges,
                      std::vector<std::string>* warnings);
void validate_edge(const EdgeConfig& e);
void validate_weights(const CostWeights& w);

/// FNV-1a content digest, hex string; used for reproducibility receipts.
std::string content_digest(const std::string& bytes);

}  // namespace edgesim
