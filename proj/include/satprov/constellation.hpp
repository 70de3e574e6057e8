#ifndef SATPROV_CONSTELLATION_HPP_
#define SATPROV_CONSTELLATION_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

// Walker-style two-shell constellation (LEO data plane, MEO controller
// plane) on circular Keplerian orbits around a spherical Earth. A snapshot
// fixes every position and the pairwise visibility relation for one time
// slot; topology is assumed stable within a slot.

namespace satprov {

inline constexpr double kEarthRadiusM = 6371.0e3;
inline constexpr double kMuEarth = 3.986004418e14;  // m^3/s^2
inline constexpr double kLightSpeedMps = 299792458.0;
// Rays grazing below this altitude count as blocked by the Earth.
inline constexpr double kVisibilityMarginM = 80.0e3;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
};

inline double distance_m(const Vec3& a, const Vec3& b) {
  return (a - b).norm();
}

struct ShellConfig {
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  int num_planes = 1;
  int sats_per_plane = 1;
  double phase_offset = 0.25;  // inter-plane phasing fraction in [0,1)
};

enum class Role : std::uint8_t { kLeo, kMeo };

struct SatelliteId {
  Role role;
  int index;  // within the role's shell
};

struct Snapshot {
  long slot = 0;
  double slot_duration_s = 60.0;
  int num_leo = 0;
  int num_meo = 0;
  double leo_radius_m = 0.0;
  double meo_radius_m = 0.0;
  // LEO 0..num_leo-1 then MEO num_leo..num_leo+num_meo-1.
  std::vector<Vec3> positions;
  // Dense symmetric visibility matrix over all satellites; diagonal false.
  std::vector<std::uint8_t> visible;

  int num_sats() const { return num_leo + num_meo; }
  int node_index(SatelliteId id) const {
    return id.role == Role::kLeo ? id.index : num_leo + id.index;
  }
  const Vec3& position(SatelliteId id) const {
    return positions[node_index(id)];
  }
  bool visible_idx(int a, int b) const {
    return visible[static_cast<std::size_t>(a) * num_sats() + b] != 0;
  }
};

class Constellation {
 public:
  // Throws std::invalid_argument if either shell would be empty.
  Constellation(const ShellConfig& leo, const ShellConfig& meo);

  int num_leo() const { return static_cast<int>(leo_elements_.size()); }
  int num_meo() const { return static_cast<int>(meo_elements_.size()); }
  const ShellConfig& leo_config() const { return leo_; }
  const ShellConfig& meo_config() const { return meo_; }

  Snapshot propagate(long slot, double slot_duration_s) const;

 private:
  struct Element {
    double raan_rad;
    double inclination_rad;
    double anomaly0_rad;
    double radius_m;
  };

  static std::vector<Element> build_shell(const ShellConfig& cfg);

  ShellConfig leo_, meo_;
  std::vector<Element> leo_elements_, meo_elements_;
};

// Straight-line (slant range) distance between two satellites.
double distance(const Snapshot& snap, SatelliteId a, SatelliteId b);

// True iff the segment a-b clears the Earth sphere plus the grazing margin.
bool is_visible(const Snapshot& snap, SatelliteId a, SatelliteId b);

inline double propagation_delay_s(double distance_m) {
  return distance_m / kLightSpeedMps;
}

// Positions-only JSON dump for debugging.
std::string snapshot_to_json(const Snapshot& snap);

}  // namespace satprov

#endif  // SATPROV_CONSTELLATION_HPP_
