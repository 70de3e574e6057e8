#ifndef SATPROV_RNG_HPP_
#define SATPROV_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeded randomness. Draw mappings are hand-rolled on top of mt19937_64 so
// generated streams do not depend on the standard library's distribution
// implementations.

namespace satprov {

using Rng = std::mt19937_64;

// Uniform on [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1); never returns an exact endpoint.
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n), unbiased. n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = rng();
  while (v >= bound) v = rng();
  return v % n;
}

inline double exponential(Rng& rng, double mean) {
  return -mean * std::log1p(-uniform_open01(rng));
}

// Standard normal via Box-Muller.
inline double normal(Rng& rng) {
  double u = uniform_open01(rng);
  double v = uniform_open01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

// Sample an index proportional to non-negative weights (at least one > 0).
inline std::size_t sample_weighted(Rng& rng, const std::vector<double>& w,
                                   double total) {
  double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return i;
  }
  return w.size() - 1;
}

// Stream-splitting hash (splitmix64) for deriving per-scenario seeds.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace satprov

#endif  // SATPROV_RNG_HPP_
