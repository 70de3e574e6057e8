#ifndef SATPROV_BASELINES_HPP_
#define SATPROV_BASELINES_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "satprov/scenario.hpp"

// Reference solvers for the provisioning objective: an exhaustive oracle
// for small instances, best-improvement hill climbing, a k-means-seeded
// genetic algorithm, and uniform random search. All are pure functions of
// (scenario, config, seed).

namespace satprov {

struct SolverResult {
  Allocation allocation;
  EvalResult eval;
  double wall_clock_s = 0.0;
  long evaluations = 0;
};

struct GAConfig {
  int population = 50;
  int generations = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.02;
  int elitism = 2;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

// Enumerates every allocation (senior kept from the scenario); ties break
// toward the lexicographically smallest controller vector. Throws
// std::invalid_argument when N_M^N_L exceeds 1e6.
SolverResult brute_force(const Scenario& scenario);

// Best-improvement single-reassignment moves until a local optimum or
// max_iters; ties break toward the lowest LEO index, then lowest MEO.
SolverResult greedy_hill_climb(const Scenario& scenario, long max_iters);

// Lloyd k-means (k = N_M) over LEO positions, clusters mapped to their
// nearest MEO by centroid distance; empty clusters are re-seeded to the
// farthest point.
Allocation kmeans_seed(const Snapshot& snap, int num_meo, std::uint64_t seed);

// Uniform crossover + per-gene mutation + tournament(3) selection with
// elitism; population starts from the seed allocation plus mutated copies.
SolverResult ga_refine(const Scenario& scenario,
                       const Allocation& seed_allocation,
                       const GAConfig& config);

// Best of n uniform random allocations plus the scenario's initial one.
SolverResult random_search(const Scenario& scenario, long n_samples,
                           std::uint64_t seed);

}  // namespace satprov

#endif  // SATPROV_BASELINES_HPP_
