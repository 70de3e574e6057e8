#ifndef SATPROV_SCENARIO_HPP_
#define SATPROV_SCENARIO_HPP_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "satprov/netmodel.hpp"
#include "satprov/rng.hpp"

// One optimization instance: a frozen snapshot, a frozen traffic scenario,
// the starting allocation, and its self-evaluation (the normalization
// denominators for every score computed against this scenario).

namespace satprov {

struct Scenario {
  int id = 0;
  std::shared_ptr<const Snapshot> snapshot;
  TrafficScenario traffic;
  Allocation initial_allocation;
  EvalParams eval_params;
  EvalResult baseline;
  // Cached encodings shared by every observation of this scenario.
  std::shared_ptr<const std::vector<double>> traffic_norm;
  std::shared_ptr<const std::vector<double>> node_load;  // per LEO, in [0,1]
  std::shared_ptr<const std::vector<std::pair<int, int>>> visibility_edges;

  int num_leo() const { return snapshot->num_leo; }
  int num_meo() const { return snapshot->num_meo; }
};

// Every LEO assigned to its nearest MEO; senior by medoid.
Allocation nearest_meo_allocation(const Snapshot& snap);
// Uniform random controllers; senior by medoid.
Allocation uniform_random_allocation(const Snapshot& snap, Rng& rng);

// Assembles the instance and evaluates the initial allocation against
// itself. Throws std::invalid_argument when the baseline denominators
// vanish (no traffic or degenerate cost model).
Scenario make_scenario(int id, std::shared_ptr<const Snapshot> snapshot,
                       TrafficScenario traffic, Allocation initial,
                       const EvalParams& params);

}  // namespace satprov

#endif  // SATPROV_SCENARIO_HPP_
