#include "edgesim/feasibility.hpp"

#include <cmath>

namespace edgesim {

namespace {

constexpr double kRelTol = 1e-9;

bool within_cap(double used, double cap) {
  return used <= cap + kRelTol * std::max(std::abs(cap), 1.0);
}

}  // namespace

DeploymentVector DeploymentVector::from_mask(std::uint64_t mask, int m) {
  DeploymentVector v(m);
  for (int i = 0; i < m; ++i) {
    v.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1u);
  }
  return v;
}

std::string DeploymentVector::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

FeasibilityReport check(const DeploymentVector& a, const Catalog& catalog,
                        const EdgeConfig& edge) {
  if (a.size() != catalog.size()) {
    throw ValidationError("deployment vector length " + std::to_string(a.size()) +
                          " does not match catalog size " + std::to_string(catalog.size()));
  }
  FeasibilityReport r;
  r.storage_cap_gb = edge.storage_gb;
  r.gpu_cap_gb = edge.gpu_gb;
  r.power_cap_kw = edge.energy_kw;
  r.power_used_kw = edge.static_kw;
  for (int m = 0; m < a.size(); ++m) {
    if (!a.bits[static_cast<std::size_t>(m)]) continue;
    const auto& p = catalog.models[static_cast<std::size_t>(m)];
    r.storage_used_gb += p.size_gb;
    r.gpu_used_gb += p.gpu_mem_gb;
    r.power_used_kw += p.energy_kw;
  }
  r.feasible = within_cap(r.storage_used_gb, r.storage_cap_gb) &&
               within_cap(r.gpu_used_gb, r.gpu_cap_gb) &&
               within_cap(r.power_used_kw, r.power_cap_kw);
  return r;
}

}  // namespace edgesim
