#include "satprov/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace satprov {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

void GAConfig::validate() const {
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0) {
    throw std::invalid_argument("rates must be in [0,1]");
  }
  if (elitism < 0 || elitism >= population) {
    throw std::invalid_argument("elitism must be in [0, population)");
  }
}

SolverResult brute_force(const Scenario& scenario) {
  int nl = scenario.num_leo(), nm = scenario.num_meo();
  double space = std::pow(static_cast<double>(nm), nl);
  if (space > 1e6) {
    throw std::invalid_argument("instance too large for exhaustive search");
  }
  auto t0 = Clock::now();
  Evaluator ev(*scenario.snapshot, scenario.traffic, scenario.eval_params);

  Allocation current = scenario.initial_allocation;
  std::fill(current.controller_of.begin(), current.controller_of.end(), 0);

  SolverResult best;
  best.evaluations = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  bool more = true;
  while (more) {
    double s = ev.score_of(current, scenario.baseline);
    best.evaluations += 1;
    if (s > best_score) {
      best_score = s;
      best.allocation = current;
    }
    // Odometer increment, last index fastest: enumeration is in
    // lexicographic order, so strict improvement keeps the smallest vector
    // among ties.
    more = false;
    for (int j = nl - 1; j >= 0; --j) {
      if (current.controller_of[j] + 1 < nm) {
        current.controller_of[j] += 1;
        std::fill(current.controller_of.begin() + j + 1,
                  current.controller_of.end(), 0);
        more = true;
        break;
      }
    }
  }
  best.eval = ev.evaluate(best.allocation, &scenario.baseline);
  best.wall_clock_s = seconds_since(t0);
  return best;
}

SolverResult greedy_hill_climb(const Scenario& scenario, long max_iters) {
  auto t0 = Clock::now();
  Evaluator ev(*scenario.snapshot, scenario.traffic, scenario.eval_params);
  int nl = scenario.num_leo(), nm = scenario.num_meo();

  SolverResult result;
  result.allocation = scenario.initial_allocation;
  double current_score = ev.score_of(result.allocation, scenario.baseline);
  result.evaluations = 1;

  for (long iter = 0; iter < max_iters; ++iter) {
    int best_leo = -1, best_meo = -1;
    double best_score = current_score;
    Allocation probe = result.allocation;
    for (int j = 0; j < nl; ++j) {
      int original = probe.controller_of[j];
      for (int i = 0; i < nm; ++i) {
        if (i == original) continue;
        probe.controller_of[j] = i;
        double s = ev.score_of(probe, scenario.baseline);
        result.evaluations += 1;
        if (s > best_score) {  // strict: ties keep lowest (leo, meo)
          best_score = s;
          best_leo = j;
          best_meo = i;
        }
      }
      probe.controller_of[j] = original;
    }
    if (best_leo < 0) break;  // local optimum
    result.allocation.controller_of[best_leo] = best_meo;
    current_score = best_score;
  }
  result.eval = ev.evaluate(result.allocation, &scenario.baseline);
  result.wall_clock_s = seconds_since(t0);
  return result;
}

Allocation kmeans_seed(const Snapshot& snap, int num_meo, std::uint64_t seed) {
  int nl = snap.num_leo;
  int k = num_meo;
  Rng rng(seed);

  // k-means++ style seeding over LEO positions.
  std::vector<Vec3> centroids;
  centroids.reserve(k);
  centroids.push_back(snap.positions[uniform_index(rng, nl)]);
  std::vector<double> d2(nl);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (int j = 0; j < nl; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& c : centroids) {
        Vec3 diff = snap.positions[j] - c;
        best = std::min(best, diff.dot(diff));
      }
      d2[j] = best;
      total += best;
    }
    if (total <= 0.0) {
      centroids.push_back(snap.positions[uniform_index(rng, nl)]);
    } else {
      centroids.push_back(
          snap.positions[sample_weighted(rng, d2, total)]);
    }
  }

  std::vector<int> cluster_of(nl, 0);
  for (int iter = 0; iter < 100; ++iter) {
    for (int j = 0; j < nl; ++j) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        double d = distance_m(snap.positions[j], centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      cluster_of[j] = best;
    }
    std::vector<Vec3> sums(k);
    std::vector<int> counts(k, 0);
    for (int j = 0; j < nl; ++j) {
      sums[cluster_of[j]] = sums[cluster_of[j]] + snap.positions[j];
      counts[cluster_of[j]] += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster to the point farthest from its centroid.
        int far_j = 0;
        double far_d = -1.0;
        for (int j = 0; j < nl; ++j) {
          double d = distance_m(snap.positions[j], centroids[cluster_of[j]]);
          if (d > far_d) {
            far_d = d;
            far_j = j;
          }
        }
        sums[c] = snap.positions[far_j];
        counts[c] = 1;
        cluster_of[far_j] = c;
      }
    }
    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      Vec3 next = sums[c] * (1.0 / counts[c]);
      shift = std::max(shift, distance_m(next, centroids[c]));
      centroids[c] = next;
    }
    if (shift < 1e-6 * snap.leo_radius_m) break;
  }

  // Map each cluster to its nearest MEO (ties toward the lowest index).
  std::vector<int> meo_of_cluster(k, 0);
  for (int c = 0; c < k; ++c) {
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_meo; ++i) {
      double d = distance_m(centroids[c], snap.positions[nl + i]);
      if (d < best_d) {
        best_d = d;
        meo_of_cluster[c] = i;
      }
    }
  }
  Allocation alloc;
  alloc.controller_of.resize(nl);
  for (int j = 0; j < nl; ++j) {
    alloc.controller_of[j] = meo_of_cluster[cluster_of[j]];
  }
  alloc.senior = senior_medoid(snap);
  return alloc;
}

SolverResult ga_refine(const Scenario& scenario,
                       const Allocation& seed_allocation,
                       const GAConfig& config) {
  config.validate();
  auto t0 = Clock::now();
  Evaluator ev(*scenario.snapshot, scenario.traffic, scenario.eval_params);
  int nl = scenario.num_leo(), nm = scenario.num_meo();
  Rng rng(config.seed);

  auto mutate = [&](std::vector<int>& genes, double rate) {
    for (int j = 0; j < nl; ++j) {
      if (uniform01(rng) < rate) {
        genes[j] = static_cast<int>(uniform_index(rng, nm));
      }
    }
  };

  SolverResult result;
  result.evaluations = 0;
  std::vector<std::vector<int>> population(config.population,
                                           seed_allocation.controller_of);
  for (int p = 1; p < config.population; ++p) {
    mutate(population[p], std::max(config.mutation_rate, 0.1));
  }

  Allocation probe = seed_allocation;
  std::vector<double> fitness(config.population);
  auto eval_pop = [&]() {
    for (int p = 0; p < config.population; ++p) {
      probe.controller_of = population[p];
      fitness[p] = ev.score_of(probe, scenario.baseline);
      result.evaluations += 1;
    }
  };
  eval_pop();

  std::vector<int> best_genes = population[0];
  double best_fitness = fitness[0];
  auto track_best = [&]() {
    for (int p = 0; p < config.population; ++p) {
      if (fitness[p] > best_fitness) {
        best_fitness = fitness[p];
        best_genes = population[p];
      }
    }
  };
  track_best();

  auto tournament = [&]() -> int {
    int best = static_cast<int>(uniform_index(rng, config.population));
    for (int t = 1; t < 3; ++t) {
      int cand = static_cast<int>(uniform_index(rng, config.population));
      if (fitness[cand] > fitness[best]) best = cand;
    }
    return best;
  };

  std::vector<int> order(config.population);
  for (int g = 0; g < config.generations; ++g) {
    for (int p = 0; p < config.population; ++p) order[p] = p;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fitness[a] > fitness[b]; });
    std::vector<std::vector<int>> next;
    next.reserve(config.population);
    for (int e = 0; e < config.elitism; ++e) {
      next.push_back(population[order[e]]);
    }
    while (static_cast<int>(next.size()) < config.population) {
      const std::vector<int>& a = population[tournament()];
      const std::vector<int>& b = population[tournament()];
      std::vector<int> child(nl);
      if (uniform01(rng) < config.crossover_rate) {
        for (int j = 0; j < nl; ++j) {
          child[j] = uniform01(rng) < 0.5 ? a[j] : b[j];
        }
      } else {
        child = a;
      }
      mutate(child, config.mutation_rate);
      next.push_back(std::move(child));
    }
    population = std::move(next);
    eval_pop();
    track_best();
  }

  result.allocation = seed_allocation;
  result.allocation.controller_of = best_genes;
  result.eval = ev.evaluate(result.allocation, &scenario.baseline);
  result.wall_clock_s = seconds_since(t0);
  return result;
}

SolverResult random_search(const Scenario& scenario, long n_samples,
                           std::uint64_t seed) {
  auto t0 = Clock::now();
  Evaluator ev(*scenario.snapshot, scenario.traffic, scenario.eval_params);
  int nl = scenario.num_leo(), nm = scenario.num_meo();
  Rng rng(seed);

  SolverResult result;
  result.allocation = scenario.initial_allocation;
  double best = ev.score_of(result.allocation, scenario.baseline);
  result.evaluations = 1;
  Allocation probe = scenario.initial_allocation;
  for (long s = 0; s < n_samples; ++s) {
    for (int j = 0; j < nl; ++j) {
      probe.controller_of[j] = static_cast<int>(uniform_index(rng, nm));
    }
    double sc = ev.score_of(probe, scenario.baseline);
    result.evaluations += 1;
    if (sc > best) {
      best = sc;
      result.allocation = probe;
    }
  }
  result.eval = ev.evaluate(result.allocation, &scenario.baseline);
  result.wall_clock_s = seconds_since(t0);
  return result;
}

}  // namespace satprov
