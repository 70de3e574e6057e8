#ifndef SATPROV_AGENT_HPP_
#define SATPROV_AGENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "satprov/env.hpp"
#include "satprov/nn.hpp"

// Graph-encoder actor-critic trained with clipped-surrogate policy
// optimization. The encoder runs mean-aggregation message passing over the
// visibility-plus-assignment graph; the policy factorizes into a
// LEO-or-STOP head and a MEO head conditioned on the chosen LEO; gradients
// are hand-derived reverse-mode.

namespace satprov {

struct PolicyConfig {
  int num_meo = 0;      // fixes the MEO head and the feature layout
  int feature_dim = 0;  // per-node input features, 5 + num_meo
  int hidden_dim = 64;
  int num_layers = 2;
};

struct TrainConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  double learning_rate = 3e-4;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  int buffer_size = 2048;
  int minibatch_size = 256;
  int update_epochs = 4;
  int f_switch = 50;           // episodes per scenario before resampling
  long max_episodes = 15000;
  int max_steps = 64;
  int hidden_dim = 64;
  int num_layers = 2;
  int k_moves = 1;             // per-step reassignment budget K
  double move_penalty = 0.01;  // lambda
  double p_nearest_init = 0.5; // chance a sampled start is nearest-MEO
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct GraphInput {
  int num_nodes = 0, num_leo = 0, num_meo = 0, feature_dim = 0;
  std::vector<double> features;            // N x F
  std::vector<std::vector<int>> neighbors;  // undirected adjacency lists
};

GraphInput make_graph_input(const Observation& obs);

struct AgentAction {
  std::vector<Move> moves;
  // True when the sequence ended with an explicit STOP choice (always the
  // case while fewer than K moves were taken).
  bool stopped = true;
};

class PolicyNet {
 public:
  PolicyNet(const PolicyConfig& cfg, std::uint64_t seed);

  struct Forward {
    const GraphInput* graph = nullptr;
    // acts[0] is the input features; acts[l+1] the output of layer l.
    std::vector<std::vector<double>> acts;
    std::vector<std::vector<double>> nbr_means;
    std::vector<double> pooled;
    std::vector<double> leo_logits;  // length N_L+1, STOP at index N_L
    std::vector<double> value_hidden;
    double value = 0.0;
  };

  Forward forward(const GraphInput& graph) const;
  std::vector<double> meo_logits(const Forward& f, int leo) const;

  AgentAction sample_action(const Forward& f, const ActionMasks& masks,
                            int max_moves, Rng& rng, double* log_prob,
                            double* entropy) const;
  AgentAction greedy_action(const Forward& f, const ActionMasks& masks,
                            int max_moves) const;
  // Log-prob and summed factor entropy of a recorded action under the
  // current parameters.
  void action_log_prob(const Forward& f, const ActionMasks& masks,
                       int max_moves, const AgentAction& action,
                       double* log_prob, double* entropy) const;

  // Accumulates gradients of
  //   coef_logp * log pi(action|s) + coef_entropy * H(s) + dvalue * V(s).
  void backward(const Forward& f, const ActionMasks& masks, int max_moves,
                const AgentAction& action, double coef_logp,
                double coef_entropy, double dvalue);

  void zero_grad();
  std::vector<ParamBlock*> blocks();
  std::vector<const ParamBlock*> blocks() const;
  const PolicyConfig& config() const { return cfg_; }

 private:
  template <typename OnFactor>
  void walk_action(const Forward& f, const ActionMasks& masks, int max_moves,
                   const AgentAction& action, OnFactor&& on_factor) const;

  PolicyConfig cfg_;
  std::vector<ParamBlock> w_self_, w_nbr_, b_layer_;
  ParamBlock w_leo_, b_leo_, w_stop_, b_stop_, w_meo_, b_meo_;
  ParamBlock w_v1_, b_v1_, w_v2_, b_v2_;
};

struct TransitionRecord {
  std::shared_ptr<const Scenario> scenario;
  Allocation state;  // allocation the action was taken from
  AgentAction action;
  double log_prob = 0.0;
  double value = 0.0;
  double reward = 0.0;
  bool done = false;
};

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// Exponentially weighted TD advantages; bootstrap_value stands in for the
// value after the last transition when it is not terminal.
GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<std::uint8_t>& dones,
                      double bootstrap_value, double gamma, double gae_lambda);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  int minibatches = 0;
};

// One full clipped-surrogate update over the buffer (multiple epochs of
// shuffled minibatches). Throws std::invalid_argument on an empty buffer.
UpdateStats ppo_update(PolicyNet& net, Adam& adam,
                       const std::vector<TransitionRecord>& buffer,
                       double bootstrap_value, const TrainConfig& cfg,
                       Rng& rng);

struct ScenarioBase {
  int id = 0;
  std::shared_ptr<const Snapshot> snapshot;
  TrafficScenario traffic;
};

struct EpisodeMetric {
  long episode = 0;
  int scenario_id = 0;
  double final_score = 0.0;
  double reward_sum = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

struct TrainResult {
  std::shared_ptr<PolicyNet> net;
  std::shared_ptr<Adam> adam;
  std::vector<EpisodeMetric> log;
};

// Scenario-switching training loop: every f_switch episodes a new
// (snapshot, traffic) pair is drawn from the pool and a fresh starting
// allocation is sampled; transitions are buffered across episodes and the
// networks update whenever the buffer fills.
TrainResult train(const std::vector<ScenarioBase>& pool,
                  const EvalParams& eval_params, const TrainConfig& cfg);

struct InferResult {
  Allocation best_allocation;
  EvalResult best_eval;
  std::vector<double> score_trace;  // reset score, then one entry per step
  double wall_clock_s = 0.0;
};

// Deterministic greedy rollout; returns the best-scoring allocation
// visited (including the start).
InferResult infer(const PolicyNet& net,
                  const std::shared_ptr<const Scenario>& scenario,
                  int max_steps, const EnvConfig& env_cfg);

// Versioned JSON checkpoint: config echo, shapes, flat parameter arrays,
// optimizer moments, RNG state.
void save_policy(std::ostream& out, const PolicyNet& net,
                 const TrainConfig& cfg, const Adam* adam);
struct LoadedPolicy {
  std::shared_ptr<PolicyNet> net;
  TrainConfig train_config;
  std::shared_ptr<Adam> adam;
};
LoadedPolicy load_policy(std::istream& in);

}  // namespace satprov

#endif  // SATPROV_AGENT_HPP_
