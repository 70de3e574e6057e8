#include "satprov/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "satprov/rng.hpp"

namespace satprov {

TrafficScenario generate_traffic(const Snapshot& snap, int n_flows,
                                 double volume_scale, std::uint64_t seed,
                                 double sync_unit) {
  if (n_flows < 0) throw std::invalid_argument("n_flows must be >= 0");
  int n = snap.num_leo;
  TrafficScenario tr;
  tr.n = n;
  tr.sync_unit = sync_unit;
  tr.volume.assign(static_cast<std::size_t>(n) * n, 0.0);
  tr.flows.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (n < 2 || n_flows == 0) return tr;

  Rng rng(seed);
  std::vector<double> w(n);
  double log_lo = std::log(0.1), log_hi = std::log(10.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = std::exp(uniform_real(rng, log_lo, log_hi));
    total += w[i];
  }

  for (int f = 0; f < n_flows; ++f) {
    int src = static_cast<int>(sample_weighted(rng, w, total));
    int dst = src;
    while (dst == src) dst = static_cast<int>(sample_weighted(rng, w, total));
    double vol = -volume_scale * std::log1p(-uniform_open01(rng));
    std::size_t idx = static_cast<std::size_t>(src) * n + dst;
    tr.volume[idx] += vol;
    tr.flows[idx] += 1.0;
  }
  return tr;
}

SyncTraffic sync_traffic(const Allocation& alloc, const TrafficScenario& tr,
                         int num_meo) {
  SyncTraffic st;
  st.per_controller.assign(num_meo, 0.0);
  for (int c : alloc.controller_of) st.per_controller[c] += tr.sync_unit;
  st.senior = tr.sync_unit * num_meo;
  return st;
}

std::vector<double> normalize_volume(const TrafficScenario& tr) {
  std::vector<double> out(tr.volume);
  double mx = 0.0;
  for (double v : out) mx = std::max(mx, v);
  if (mx > 0.0) {
    for (double& v : out) v /= mx;
  }
  return out;
}

void write_traffic_csv(std::ostream& out, const TrafficScenario& tr) {
  out << "src,dst,volume_mb,flows\n";
  std::ostringstream line;
  line.precision(17);
  for (int i = 0; i < tr.n; ++i) {
    for (int j = 0; j < tr.n; ++j) {
      if (tr.flow(i, j) == 0.0 && tr.vol(i, j) == 0.0) continue;
      line.str("");
      line << i << "," << j << "," << tr.vol(i, j) << ","
           << static_cast<long long>(tr.flow(i, j)) << "\n";
      out << line.str();
    }
  }
}

TrafficScenario read_traffic_csv(std::istream& in, int n, double sync_unit) {
  TrafficScenario tr;
  tr.n = n;
  tr.sync_unit = sync_unit;
  tr.volume.assign(static_cast<std::size_t>(n) * n, 0.0);
  tr.flows.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty traffic csv");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    int vals_i[2];
    for (int k = 0; k < 2; ++k) {
      if (!std::getline(ls, field, ',')) {
        throw std::runtime_error("malformed traffic csv row: " + line);
      }
      vals_i[k] = std::stoi(field);
    }
    if (!std::getline(ls, field, ',')) {
      throw std::runtime_error("malformed traffic csv row: " + line);
    }
    double vol = std::stod(field);
    if (!std::getline(ls, field)) {
      throw std::runtime_error("malformed traffic csv row: " + line);
    }
    double fl = std::stod(field);
    if (vals_i[0] < 0 || vals_i[0] >= n || vals_i[1] < 0 || vals_i[1] >= n) {
      throw std::runtime_error("traffic csv index out of range: " + line);
    }
    std::size_t idx = static_cast<std::size_t>(vals_i[0]) * n + vals_i[1];
    tr.volume[idx] = vol;
    tr.flows[idx] = fl;
  }
  return tr;
}

}  // namespace satprov
