#include <random>

#include "doctest.h"
#include "edgesim/feasibility.hpp"
#include "edgesim/rng.hpp"
#include "helpers.hpp"

using namespace edgesim;
using test::make_model;

TEST_CASE("empty deployment is feasible and carries only the static draw") {
  Catalog c;
  c.models = {make_model(0, 10, 2, 0.5, 1, 1), make_model(1, 10, 2, 0.5, 1, 1)};
  EdgeConfig e{100, 10, 1.0, 0.3, 10};
  const auto r = check(DeploymentVector::zeros(2), c, e);
  CHECK(r.feasible);
  CHECK(r.power_used_kw == doctest::Approx(0.3));
  CHECK(r.storage_used_gb == 0.0);
}

TEST_CASE("two 0.5 kW models blow a 1 kW budget with 0.3 kW static draw") {
  Catalog c;
  c.models = {make_model(0, 10, 2, 0.5, 1, 1), make_model(1, 10, 2, 0.5, 1, 1)};
  EdgeConfig e{100, 10, 1.0, 0.3, 10};
  DeploymentVector a(2);
  a.bits = {1, 1};
  const auto r = check(a, c, e);
  CHECK_FALSE(r.feasible);
  CHECK(r.power_used_kw == doctest::Approx(1.3));
}

TEST_CASE("capacity boundaries are inclusive") {
  Catalog c;
  c.models = {make_model(0, 10, 2, 0.1, 1, 1)};
  EdgeConfig e{10, 2, 1.0, 0.3, 10};
  DeploymentVector a(1);
  a.bits = {1};
  CHECK(check(a, c, e).feasible);
}

TEST_CASE("length mismatch is an error") {
  Catalog c;
  c.models = {make_model(0, 10, 2, 0.1, 1, 1)};
  EdgeConfig e{10, 2, 1.0, 0.3, 10};
  CHECK_THROWS_AS(check(DeploymentVector::zeros(2), c, e), ValidationError);
}

TEST_CASE("clearing any bit of a feasible vector keeps it feasible") {
  auto rng = make_rng(123);
  const EdgeConfig e{60, 8, 1.0, 0.3, 10};
  for (int trial = 0; trial < 200; ++trial) {
    const Catalog c = sample_catalog(8, ProfileRanges{}, derive_seed(5, trial));
    DeploymentVector a(8);
    std::bernoulli_distribution coin(0.5);
    for (auto& b : a.bits) b = coin(rng) ? 1 : 0;
    if (!check(a, c, e).feasible) continue;
    for (int m = 0; m < 8; ++m) {
      if (!a.bits[m]) continue;
      DeploymentVector cleared = a;
      cleared.bits[m] = 0;
      CHECK(check(cleared, c, e).feasible);
    }
  }
}
