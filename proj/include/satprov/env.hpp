#ifndef SATPROV_ENV_HPP_
#define SATPROV_ENV_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "satprov/scenario.hpp"

// The provisioning MDP: states are (scenario, current allocation), actions
// reassign up to K distinct LEO satellites, transitions are deterministic,
// and the reward is the potential difference of the score minus a per-move
// churn penalty.

namespace satprov {

struct Move {
  int leo = 0;
  int meo = 0;
};

struct ActionSet {
  std::vector<Move> moves;  // distinct LEO indices, size in [0, K]
};

// Node ordering everywhere: LEO 0..N_L-1 then MEO N_L..N_L+N_M-1.
// Per-node features: [x,y,z normalized by the MEO shell radius, traffic
// load in [0,1], controller-role flag, controller one-hot].
struct Observation {
  int num_leo = 0;
  int num_meo = 0;
  std::shared_ptr<const std::vector<double>> traffic_norm;    // N_L x N_L
  std::vector<double> initial_onehot;                          // N_L x N_M
  std::vector<double> current_onehot;                          // N_L x N_M
  std::vector<double> node_features;  // (N_L+N_M) x feature_dim
  // Undirected adjacency: shared visibility edges plus the current
  // LEO-to-controller assignment edges.
  std::shared_ptr<const std::vector<std::pair<int, int>>> visibility_edges;
  std::vector<std::pair<int, int>> assignment_edges;

  int feature_dim() const { return 5 + num_meo; }
  int num_nodes() const { return num_leo + num_meo; }
  // traffic matrix + both one-hots + node features
  std::size_t flat_size() const {
    return static_cast<std::size_t>(num_leo) * num_leo +
           2u * static_cast<std::size_t>(num_leo) * num_meo +
           static_cast<std::size_t>(num_nodes()) * feature_dim();
  }
};

struct ActionMasks {
  std::vector<std::uint8_t> leo_or_stop;  // size N_L+1, STOP at index N_L
  std::vector<std::uint8_t> meo;          // size N_M
};

struct StepOutcome {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  double score_before = 0.0;
  double score_after = 0.0;
  int moves_applied = 0;
};

struct EnvConfig {
  int max_steps = 64;
  int max_moves_per_step = 1;  // K
  double gamma = 0.99;
  double move_penalty = 0.01;  // lambda, per reassignment
};

Observation encode(const Allocation& alloc, const Scenario& scenario);

class Env {
 public:
  Env(std::shared_ptr<const Scenario> scenario, EnvConfig config);

  Observation reset();
  // Throws std::invalid_argument on an out-of-range index, a duplicate LEO,
  // or more than K moves; the state is left unchanged.
  StepOutcome step(const ActionSet& action);

  ActionMasks valid_actions_mask() const;
  const Allocation& allocation() const { return current_; }
  const Scenario& scenario() const { return *scenario_; }
  double current_score() const { return current_score_; }
  int step_count() const { return step_count_; }
  const EnvConfig& config() const { return config_; }

 private:
  std::shared_ptr<const Scenario> scenario_;
  EnvConfig config_;
  Evaluator evaluator_;
  Allocation current_;
  double current_score_ = 0.0;
  int step_count_ = 0;
};

}  // namespace satprov

#endif  // SATPROV_ENV_HPP_
