#ifndef SATPROV_TRAFFIC_HPP_
#define SATPROV_TRAFFIC_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "satprov/allocation.hpp"
#include "satprov/constellation.hpp"

// Synthetic per-slot traffic between LEO satellites: a volume matrix (Mb),
// a flow-count matrix, and the per-managed-node synchronization unit.

namespace satprov {

struct TrafficScenario {
  int n = 0;  // number of LEO satellites
  std::vector<double> volume;  // n*n row-major, megabits, zero diagonal
  std::vector<double> flows;   // n*n row-major, integer-valued counts
  double sync_unit = 1.0;      // megabits per managed node per slot

  double vol(int i, int j) const {
    return volume[static_cast<std::size_t>(i) * n + j];
  }
  double flow(int i, int j) const {
    return flows[static_cast<std::size_t>(i) * n + j];
  }
};

// Gravity-style sampling: per-LEO weights drawn log-uniform in [0.1, 10],
// flow endpoints drawn proportional to w_i * w_j (i != j), per-flow volume
// exponential with the given mean. Deterministic for a fixed seed.
TrafficScenario generate_traffic(const Snapshot& snap, int n_flows,
                                 double volume_scale, std::uint64_t seed,
                                 double sync_unit = 1.0);

struct SyncTraffic {
  std::vector<double> per_controller;  // Ts(i), one per MEO
  double senior = 0.0;                 // Ts to the senior controller
};

// Synchronization traffic is linear in domain size; the senior syncs with
// every controller.
SyncTraffic sync_traffic(const Allocation& alloc, const TrafficScenario& tr,
                         int num_meo);

// Volume matrix scaled into [0,1] by its maximum entry (all-zero maps to
// itself).
std::vector<double> normalize_volume(const TrafficScenario& tr);

// CSV with header src,dst,volume_mb,flows; only nonzero entries listed.
void write_traffic_csv(std::ostream& out, const TrafficScenario& tr);
TrafficScenario read_traffic_csv(std::istream& in, int n,
                                 double sync_unit = 1.0);

}  // namespace satprov

#endif  // SATPROV_TRAFFIC_HPP_
