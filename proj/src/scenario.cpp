#include "satprov/scenario.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace satprov {

Allocation nearest_meo_allocation(const Snapshot& snap) {
  Allocation alloc;
  alloc.controller_of.resize(snap.num_leo);
  for (int j = 0; j < snap.num_leo; ++j) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < snap.num_meo; ++i) {
      double d = distance(snap, {Role::kLeo, j}, {Role::kMeo, i});
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    alloc.controller_of[j] = best;
  }
  alloc.senior = senior_medoid(snap);
  return alloc;
}

Allocation uniform_random_allocation(const Snapshot& snap, Rng& rng) {
  Allocation alloc;
  alloc.controller_of.resize(snap.num_leo);
  for (int j = 0; j < snap.num_leo; ++j) {
    alloc.controller_of[j] = static_cast<int>(uniform_index(rng, snap.num_meo));
  }
  alloc.senior = senior_medoid(snap);
  return alloc;
}

Scenario make_scenario(int id, std::shared_ptr<const Snapshot> snapshot,
                       TrafficScenario traffic, Allocation initial,
                       const EvalParams& params) {
  Scenario sc;
  sc.id = id;
  sc.snapshot = std::move(snapshot);
  sc.traffic = std::move(traffic);
  sc.initial_allocation = std::move(initial);
  sc.eval_params = params;
  sc.baseline =
      evaluate(*sc.snapshot, sc.initial_allocation, sc.traffic, params);
  if (sc.baseline.o_total <= 0.0 || sc.baseline.d_avg <= 0.0) {
    throw std::invalid_argument(
        "degenerate scenario: baseline overhead or delay is zero");
  }

  sc.traffic_norm =
      std::make_shared<const std::vector<double>>(normalize_volume(sc.traffic));

  int n = sc.snapshot->num_leo;
  std::vector<double> load(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      load[i] += sc.traffic.vol(i, j);
      load[j] += sc.traffic.vol(i, j);
    }
  }
  double mx = *std::max_element(load.begin(), load.end());
  if (mx > 0.0) {
    for (double& v : load) v /= mx;
  }
  sc.node_load = std::make_shared<const std::vector<double>>(std::move(load));

  std::vector<std::pair<int, int>> edges;
  int total = sc.snapshot->num_sats();
  for (int a = 0; a < total; ++a) {
    for (int b = a + 1; b < total; ++b) {
      if (sc.snapshot->visible_idx(a, b)) edges.emplace_back(a, b);
    }
  }
  sc.visibility_edges =
      std::make_shared<const std::vector<std::pair<int, int>>>(std::move(edges));
  return sc;
}

}  // namespace satprov
