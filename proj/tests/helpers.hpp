#pragma once

#include <string>
#include <vector>

#include "edgesim/catalog.hpp"
#include "edgesim/cost.hpp"

namespace edgesim::test {

inline ModelProfile make_model(int id, double s, double g, double e, double d, double i) {
  ModelProfile m;
  m.id = id;
  m.name = "m" + std::to_string(id);
  m.size_gb = s;
  m.gpu_mem_gb = g;
  m.energy_kw = e;
  m.io_delay_s = d;
  m.infer_delay_s = i;
  return m;
}

// The hand-verified two-model instance: decision costs 36 / 19 / 31 / 7
// across [1,1], [1,0], [0,1], [0,0] from prev = [1,1].
struct TwoModelInstance {
  Catalog catalog;
  EdgeConfig edge{35.0, 10.0, 1.0, 0.3, 10.0};
  CostWeights weights{1.0, 1.0, 1.0};
  ActiveCycles beta{{2.0, 4.0}};

  TwoModelInstance() {
    catalog.models = {make_model(0, 10, 2, 0.1, 5, 1), make_model(1, 20, 4, 0.1, 10, 2)};
  }
};

}  // namespace edgesim::test
