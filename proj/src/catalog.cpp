#include "edgesim/catalog.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "edgesim/rng.hpp"
#include "json.hpp"

namespace edgesim {

namespace {

using json = nlohmann::ordered_json;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const std::string& field) {
  if (!positive_finite(v)) {
    throw ValidationError(field + " must be strictly positive and finite, got " +
                          std::to_string(v));
  }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ParseError("unknown key '" + key + "' in " + where);
    }
  }
}

double get_num(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ParseError("missing key '" + key + "' in " + where);
  }
  if (!obj.at(key).is_number()) {
    throw ParseError("key '" + key + "' in " + where + " must be a number");
  }
  return obj.at(key).get<double>();
}

void warn_if_outside(double v, const FieldRange& r, const std::string& field,
                     const std::string& model, std::vector<std::string>* out) {
  if (out && (v < r.lo || v > r.hi)) {
    std::ostringstream os;
    os << "model '" << model << "': " << field << " = " << v
       << " outside validity range [" << r.lo << ", " << r.hi << "]";
    out->push_back(os.str());
  }
}

}  // namespace

void validate_catalog(const Catalog& c, const ProfileRanges& ranges,
                      std::vector<std::string>* warnings) {
  if (c.models.empty()) {
    throw ValidationError("catalog must contain at least one model");
  }
  std::set<std::string> names;
  for (int i = 0; i < c.size(); ++i) {
    const auto& m = c.models[i];
    if (m.id != i) {
      throw ValidationError("model id " + std::to_string(m.id) +
                            " does not match catalog position " + std::to_string(i));
    }
    if (!names.insert(m.name).second) {
      throw ValidationError("duplicate model name '" + m.name + "'");
    }
    const std::string p = "model '" + m.name + "': ";
    require_positive(m.size_gb, p + "size_gb");
    require_positive(m.gpu_mem_gb, p + "gpu_mem_gb");
    require_positive(m.energy_kw, p + "energy_kw");
    require_positive(m.io_delay_s, p + "io_delay_s");
    require_positive(m.infer_delay_s, p + "infer_delay_s");
    warn_if_outside(m.size_gb, ranges.size_gb, "size_gb", m.name, warnings);
    warn_if_outside(m.gpu_mem_gb, ranges.gpu_mem_gb, "gpu_mem_gb", m.name, warnings);
    warn_if_outside(m.energy_kw, ranges.energy_kw, "energy_kw", m.name, warnings);
    warn_if_outside(m.io_delay_s, ranges.io_delay_s, "io_delay_s", m.name, warnings);
    warn_if_outside(m.infer_delay_s, ranges.infer_delay_s, "infer_delay_s", m.name,
                    warnings);
  }
}

void validate_edge(const EdgeConfig& e) {
  require_positive(e.storage_gb, "edge.storage_gb");
  require_positive(e.gpu_gb, "edge.gpu_gb");
  require_positive(e.energy_kw, "edge.energy_kw");
  require_positive(e.static_kw, "edge.static_kw");
  require_positive(e.bandwidth_gbps, "edge.bandwidth_gbps");
  if (!(e.static_kw < e.energy_kw)) {
    throw ValidationError(
        "edge.static_kw must be strictly below edge.energy_kw; no model is ever "
        "deployable otherwise");
  }
}

void validate_weights(const CostWeights& w) {
  auto nonneg = [](double v, const char* field) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(std::string(field) + " must be finite and >= 0");
    }
  };
  nonneg(w.w, "weights.w");
  nonneg(w.mu_l, "weights.mu_l");
  nonneg(w.mu_r, "weights.mu_r");
  if (w.mu_l + w.mu_r <= 0.0) {
    throw ValidationError("weights: mu_l + mu_r must be positive");
  }
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("scenario root must be an object");
  }
  reject_unknown_keys(doc, {"models", "edge", "weights", "arrival_rates", "slot_length_s"},
                      "scenario");
  if (!doc.contains("models") || !doc["models"].is_array()) {
    throw ParseError("scenario requires a 'models' array");
  }
  if (!doc.contains("edge") || !doc["edge"].is_object()) {
    throw ParseError("scenario requires an 'edge' object");
  }

  Scenario s;
  int idx = 0;
  for (const auto& jm : doc["models"]) {
    if (!jm.is_object()) throw ParseError("each model entry must be an object");
    const std::string where = "models[" + std::to_string(idx) + "]";
    reject_unknown_keys(
        jm, {"name", "size_gb", "gpu_mem_gb", "energy_kw", "io_delay_s", "infer_delay_s"},
        where);
    ModelProfile m;
    m.id = idx;
    if (!jm.contains("name") || !jm["name"].is_string()) {
      throw ParseError(where + " requires a string 'name'");
    }
    m.name = jm["name"].get<std::string>();
    m.size_gb = get_num(jm, "size_gb", where);
    m.gpu_mem_gb = get_num(jm, "gpu_mem_gb", where);
    m.energy_kw = get_num(jm, "energy_kw", where);
    m.io_delay_s = get_num(jm, "io_delay_s", where);
    m.infer_delay_s = get_num(jm, "infer_delay_s", where);
    s.catalog.models.push_back(std::move(m));
    ++idx;
  }

  const auto& je = doc["edge"];
  reject_unknown_keys(je, {"storage_gb", "gpu_gb", "energy_kw", "static_kw", "bandwidth_gbps"},
                      "edge");
  s.edge.storage_gb = get_num(je, "storage_gb", "edge");
  s.edge.gpu_gb = get_num(je, "gpu_gb", "edge");
  s.edge.energy_kw = get_num(je, "energy_kw", "edge");
  s.edge.static_kw = get_num(je, "static_kw", "edge");
  s.edge.bandwidth_gbps = get_num(je, "bandwidth_gbps", "edge");

  if (doc.contains("weights")) {
    const auto& jw = doc["weights"];
    if (!jw.is_object()) throw ParseError("'weights' must be an object");
    reject_unknown_keys(jw, {"w", "mu_l", "mu_r"}, "weights");
    if (jw.contains("w")) s.weights.w = get_num(jw, "w", "weights");
    if (jw.contains("mu_l")) s.weights.mu_l = get_num(jw, "mu_l", "weights");
    if (jw.contains("mu_r")) s.weights.mu_r = get_num(jw, "mu_r", "weights");
  }

  if (doc.contains("arrival_rates")) {
    const auto& jr = doc["arrival_rates"];
    if (!jr.is_array()) throw ParseError("'arrival_rates' must be an array");
    for (const auto& v : jr) {
      if (!v.is_number()) throw ParseError("arrival_rates entries must be numbers");
      s.arrival_rates.push_back(v.get<double>());
    }
    if (static_cast<int>(s.arrival_rates.size()) != s.catalog.size()) {
      throw ValidationError("arrival_rates length must equal the model count");
    }
    for (double r : s.arrival_rates) {
      if (!std::isfinite(r) || r < 0.0) {
        throw ValidationError("arrival_rates entries must be finite and >= 0");
      }
    }
  }

  if (doc.contains("slot_length_s")) {
    double tau = get_num(doc, "slot_length_s", "scenario");
    require_positive(tau, "slot_length_s");
    s.slot_length_s = tau;
  }

  validate_catalog(s.catalog, ProfileRanges{}, &s.warnings);
  validate_edge(s.edge);
  validate_weights(s.weights);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["models"] = json::array();
  for (const auto& m : s.catalog.models) {
    doc["models"].push_back({{"name", m.name},
                             {"size_gb", m.size_gb},
                             {"gpu_mem_gb", m.gpu_mem_gb},
                             {"energy_kw", m.energy_kw},
                             {"io_delay_s", m.io_delay_s},
                             {"infer_delay_s", m.infer_delay_s}});
  }
  doc["edge"] = {{"storage_gb", s.edge.storage_gb},
                 {"gpu_gb", s.edge.gpu_gb},
                 {"energy_kw", s.edge.energy_kw},
                 {"static_kw", s.edge.static_kw},
                 {"bandwidth_gbps", s.edge.bandwidth_gbps}};
  doc["weights"] = {{"w", s.weights.w}, {"mu_l", s.weights.mu_l}, {"mu_r", s.weights.mu_r}};
  if (!s.arrival_rates.empty()) doc["arrival_rates"] = s.arrival_rates;
  if (s.slot_length_s) doc["slot_length_s"] = *s.slot_length_s;
  return doc.dump(2) + "\n";
}

void write_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + path.string());
  }
  out << scenario_to_json(s);
}

Catalog sample_catalog(int m, const ProfileRanges& ranges, std::uint64_t seed) {
  if (m < 1) {
    throw ValidationError("sample_catalog: model count must be >= 1");
  }
  auto check_range = [](const FieldRange& r, const char* field) {
    if (!(r.lo > 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi)) {
      throw ValidationError(std::string("sample_catalog: invalid range for ") + field);
    }
  };
  check_range(ranges.size_gb, "size_gb");
  check_range(ranges.gpu_mem_gb, "gpu_mem_gb");
  check_range(ranges.energy_kw, "energy_kw");
  check_range(ranges.io_delay_s, "io_delay_s");
  check_range(ranges.infer_delay_s, "infer_delay_s");

  auto rng = make_rng(seed);
  auto draw = [&rng](const FieldRange& r) {
    if (r.lo == r.hi) return r.lo;
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
  };

  Catalog c;
  c.models.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    ModelProfile p;
    p.id = i;
    p.name = "model-" + std::to_string(i);
    p.size_gb = draw(ranges.size_gb);
    p.gpu_mem_gb = draw(ranges.gpu_mem_gb);
    p.energy_kw = draw(ranges.energy_kw);
    p.io_delay_s = draw(ranges.io_delay_s);
    p.infer_delay_s = draw(ranges.infer_delay_s);
    c.models.push_back(std::move(p));
  }
  return c;
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace edgesim
