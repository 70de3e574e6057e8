#ifndef SATPROV_TESTS_ORACLE_EVAL_HPP_
#define SATPROV_TESTS_ORACLE_EVAL_HPP_

// Independent reference evaluator used only by tests: straight triple-loop
// translation of the cost model over raw positions. Deliberately shares no
// computation strategy with the production evaluator (no precomputation,
// no kernel calls); keep it slow and obvious.

#include <algorithm>
#include <cmath>
#include <vector>

#include "satprov/allocation.hpp"
#include "satprov/constellation.hpp"
#include "satprov/netmodel.hpp"
#include "satprov/traffic.hpp"

namespace satprov::testing {

struct OracleResult {
  double o_syn = 0.0, o_flow = 0.0, o_path = 0.0, o_total = 0.0;
  std::vector<double> d_intra;
  double d_inter = 0.0, d_avg = 0.0;
  double score = 0.0;
};

inline double oracle_speed(const Snapshot& snap, int node_a, int node_b) {
  const Vec3& a = snap.positions[node_a];
  const Vec3& b = snap.positions[node_b];
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz) / 299792458.0;
}

inline OracleResult oracle_evaluate(const Snapshot& snap,
                                    const Allocation& alloc,
                                    const TrafficScenario& tr,
                                    const EvalParams& params,
                                    const OracleResult* baseline = nullptr) {
  int nl = snap.num_leo, nm = snap.num_meo;
  auto leo_node = [&](int j) { return j; };
  auto meo_node = [&](int i) { return nl + i; };

  std::vector<std::vector<int>> domains(nm);
  for (int j = 0; j < nl; ++j) domains[alloc.controller_of[j]].push_back(j);

  double ts_senior = tr.sync_unit * nm;

  OracleResult r;
  r.d_intra.assign(nm, 0.0);

  // Synchronization: each controller with the farthest member it manages,
  // plus the senior with the farthest controller.
  for (int i = 0; i < nm; ++i) {
    double ts_i = tr.sync_unit * static_cast<double>(domains[i].size());
    double worst = 0.0;
    for (int j : domains[i]) {
      worst = std::max(worst, oracle_speed(snap, leo_node(j), meo_node(i)));
    }
    r.o_syn += ts_i * worst;
  }
  double worst_ctrl = 0.0;
  for (int i = 0; i < nm; ++i) {
    worst_ctrl = std::max(
        worst_ctrl, oracle_speed(snap, meo_node(i), meo_node(alloc.senior)));
  }
  r.o_syn += ts_senior * worst_ctrl;

  // Flow table updates: member-to-controller for in-domain pairs,
  // controller-to-senior for cross-domain pairs.
  for (int i = 0; i < nm; ++i) {
    double sp_senior = oracle_speed(snap, meo_node(i), meo_node(alloc.senior));
    for (int j : domains[i]) {
      double sp_ctrl = oracle_speed(snap, leo_node(j), meo_node(i));
      for (int k = 0; k < nl; ++k) {
        bool same = alloc.controller_of[k] == i;
        if (same) {
          r.o_flow += tr.vol(j, k) * sp_ctrl;
        } else {
          r.o_flow += tr.vol(j, k) * sp_senior;
        }
      }
    }
  }

  // Path computation.
  auto dp_i = [&](int i) {
    double n = static_cast<double>(domains[i].size());
    return params.c_ospf_s * n * std::log2(n + 1.0);
  };
  double dp_star = params.c_bgp_s * static_cast<double>(nm) * nm;
  for (int i = 0; i < nm; ++i) r.o_path += dp_i(i);
  r.o_path += dp_star;

  r.o_total = r.o_syn + r.o_flow + r.o_path;

  for (int i = 0; i < nm; ++i) {
    double sp_senior = oracle_speed(snap, meo_node(i), meo_node(alloc.senior));
    r.d_intra[i] = ts_senior * sp_senior + dp_i(i);
    for (int j : domains[i]) {
      double sp_ctrl = oracle_speed(snap, leo_node(j), meo_node(i));
      for (int k : domains[i]) {
        r.d_intra[i] += tr.vol(j, k) * sp_ctrl;
      }
    }
  }
  double max_intra = 0.0;
  for (int i = 0; i < nm; ++i) max_intra = std::max(max_intra, r.d_intra[i]);
  r.d_inter = max_intra + dp_star;
  for (int i = 0; i < nm; ++i) {
    double sp_senior = oracle_speed(snap, meo_node(i), meo_node(alloc.senior));
    for (int j : domains[i]) {
      for (int k = 0; k < nl; ++k) {
        if (alloc.controller_of[k] != i) {
          r.d_inter += tr.vol(j, k) * sp_senior;
        }
      }
    }
  }

  double total_flows = 0.0, weighted = 0.0;
  for (int u = 0; u < nl; ++u) {
    for (int v = 0; v < nl; ++v) {
      double f = tr.flow(u, v);
      if (f <= 0.0) continue;
      bool same = alloc.controller_of[u] == alloc.controller_of[v];
      double delay = r.d_intra[alloc.controller_of[u]];
      if (params.charge_inter_to_all_flows || !same) delay += r.d_inter;
      total_flows += f;
      weighted += f * delay;
    }
  }
  r.d_avg = total_flows > 0.0 ? weighted / total_flows : 0.0;

  double o_ratio = 1.0, d_ratio = 1.0;
  if (baseline != nullptr) {
    o_ratio = r.o_total / baseline->o_total;
    d_ratio = r.d_avg / baseline->d_avg;
  }
  auto term = [&](double ratio) {
    return ratio <= 1.0 - params.eps_clip ? std::log(1.0 - ratio) / 2.0
                                          : params.penalty;
  };
  r.score = (1.0 - params.alpha) * term(o_ratio) + params.alpha * term(d_ratio);
  return r;
}

}  // namespace satprov::testing

#endif  // SATPROV_TESTS_ORACLE_EVAL_HPP_
