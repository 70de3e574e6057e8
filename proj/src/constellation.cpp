#include "satprov/constellation.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace satprov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

// Segment a-b intersects the sphere of radius r centred at the origin?
// Both endpoints are assumed outside the sphere.
bool segment_hits_sphere(const Vec3& a, const Vec3& b, double r) {
  Vec3 d = b - a;
  double dd = d.dot(d);
  if (dd == 0.0) return false;
  double s = -a.dot(d) / dd;  // closest approach parameter
  if (s <= 0.0 || s >= 1.0) return false;
  Vec3 p = a + d * s;
  return p.dot(p) < r * r;
}

}  // namespace

std::vector<Constellation::Element> Constellation::build_shell(
    const ShellConfig& cfg) {
  if (cfg.num_planes <= 0 || cfg.sats_per_plane <= 0) {
    throw std::invalid_argument("shell has zero satellites");
  }
  if (cfg.altitude_km <= 0.0) {
    throw std::invalid_argument("shell altitude must be positive");
  }
  std::vector<Element> elems;
  elems.reserve(static_cast<std::size_t>(cfg.num_planes) * cfg.sats_per_plane);
  double radius = kEarthRadiusM + cfg.altitude_km * 1000.0;
  double incl = cfg.inclination_deg * kDegToRad;
  for (int p = 0; p < cfg.num_planes; ++p) {
    double raan = kTwoPi * p / cfg.num_planes;
    // Walker-delta phasing: plane p shifts in-plane anomalies by
    // phase_offset slot fractions.
    double phase = kTwoPi * cfg.phase_offset * p / cfg.sats_per_plane;
    for (int q = 0; q < cfg.sats_per_plane; ++q) {
      double anom = kTwoPi * q / cfg.sats_per_plane + phase;
      elems.push_back({raan, incl, anom, radius});
    }
  }
  return elems;
}

Constellation::Constellation(const ShellConfig& leo, const ShellConfig& meo)
    : leo_(leo), meo_(meo) {
  leo_elements_ = build_shell(leo);
  meo_elements_ = build_shell(meo);
}

Snapshot Constellation::propagate(long slot, double slot_duration_s) const {
  Snapshot snap;
  snap.slot = slot;
  snap.slot_duration_s = slot_duration_s;
  snap.num_leo = num_leo();
  snap.num_meo = num_meo();
  snap.leo_radius_m = kEarthRadiusM + leo_.altitude_km * 1000.0;
  snap.meo_radius_m = kEarthRadiusM + meo_.altitude_km * 1000.0;
  snap.positions.reserve(snap.num_sats());

  double t = static_cast<double>(slot) * slot_duration_s;
  auto emit = [&](const std::vector<Element>& elems) {
    for (const Element& e : elems) {
      double rate = std::sqrt(kMuEarth / (e.radius_m * e.radius_m * e.radius_m));
      double u = e.anomaly0_rad + rate * t;  // argument along the plane
      double cu = std::cos(u), su = std::sin(u);
      double co = std::cos(e.raan_rad), so = std::sin(e.raan_rad);
      double ci = std::cos(e.inclination_rad), si = std::sin(e.inclination_rad);
      snap.positions.push_back({e.radius_m * (co * cu - so * su * ci),
                                e.radius_m * (so * cu + co * su * ci),
                                e.radius_m * (su * si)});
    }
  };
  emit(leo_elements_);
  emit(meo_elements_);

  int n = snap.num_sats();
  snap.visible.assign(static_cast<std::size_t>(n) * n, 0);
  double block_radius = kEarthRadiusM + kVisibilityMarginM;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool vis = !segment_hits_sphere(snap.positions[a], snap.positions[b],
                                      block_radius);
      snap.visible[static_cast<std::size_t>(a) * n + b] = vis;
      snap.visible[static_cast<std::size_t>(b) * n + a] = vis;
    }
  }
  return snap;
}

double distance(const Snapshot& snap, SatelliteId a, SatelliteId b) {
  return distance_m(snap.position(a), snap.position(b));
}

bool is_visible(const Snapshot& snap, SatelliteId a, SatelliteId b) {
  return snap.visible_idx(snap.node_index(a), snap.node_index(b));
}

std::string snapshot_to_json(const Snapshot& snap) {
  std::ostringstream out;
  out.precision(17);
  out << "{\"slot\":" << snap.slot << ",\"num_leo\":" << snap.num_leo
      << ",\"num_meo\":" << snap.num_meo << ",\"positions_m\":[";
  for (std::size_t i = 0; i < snap.positions.size(); ++i) {
    const Vec3& p = snap.positions[i];
    out << (i ? "," : "") << "[" << p.x << "," << p.y << "," << p.z << "]";
  }
  out << "]}";
  return out.str();
}

}  // namespace satprov
