#include "satprov/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "satprov/kernels.hpp"

namespace satprov {

void TrainConfig::validate() const {
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0)) {
    throw std::invalid_argument("clip_epsilon must be in (0,1)");
  }
  if (buffer_size < 1 || minibatch_size < 1 || minibatch_size > buffer_size ||
      buffer_size % minibatch_size != 0) {
    throw std::invalid_argument(
        "buffer_size must be a positive multiple of minibatch_size");
  }
  if (gamma < 0.0 || gamma > 1.0 || gae_lambda < 0.0 || gae_lambda > 1.0) {
    throw std::invalid_argument("gamma and gae_lambda must be in [0,1]");
  }
  if (update_epochs < 1 || max_steps < 1 || f_switch < 1 || max_episodes < 1 ||
      hidden_dim < 1 || num_layers < 1 || k_moves < 1) {
    throw std::invalid_argument("count hyperparameters must be >= 1");
  }
  if (learning_rate < 0.0 || entropy_coef < 0.0 || value_coef < 0.0 ||
      move_penalty < 0.0) {
    throw std::invalid_argument("coefficients must be non-negative");
  }
  if (p_nearest_init < 0.0 || p_nearest_init > 1.0) {
    throw std::invalid_argument("p_nearest_init must be in [0,1]");
  }
}

GraphInput make_graph_input(const Observation& obs) {
  GraphInput g;
  g.num_nodes = obs.num_nodes();
  g.num_leo = obs.num_leo;
  g.num_meo = obs.num_meo;
  g.feature_dim = obs.feature_dim();
  g.features = obs.node_features;
  g.neighbors.resize(g.num_nodes);
  for (const auto& [a, b] : *obs.visibility_edges) {
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
  }
  for (const auto& [a, b] : obs.assignment_edges) {
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
  }
  return g;
}

PolicyNet::PolicyNet(const PolicyConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
  if (cfg.num_meo < 1 || cfg.feature_dim < 1 || cfg.hidden_dim < 1 ||
      cfg.num_layers < 1) {
    throw std::invalid_argument("invalid policy configuration");
  }
  Rng rng(seed);
  int h = cfg.hidden_dim;
  for (int l = 0; l < cfg.num_layers; ++l) {
    int d_in = l == 0 ? cfg.feature_dim : h;
    double scale = 1.0 / std::sqrt(static_cast<double>(d_in));
    w_self_.push_back(make_param("enc" + std::to_string(l) + ".w_self", h, d_in));
    init_gaussian(w_self_.back(), rng, scale);
    w_nbr_.push_back(make_param("enc" + std::to_string(l) + ".w_nbr", h, d_in));
    init_gaussian(w_nbr_.back(), rng, scale);
    b_layer_.push_back(make_param("enc" + std::to_string(l) + ".b", h, 1));
  }
  double head_scale = 0.01 / std::sqrt(static_cast<double>(h));
  w_leo_ = make_param("head.w_leo", 1, h);
  init_gaussian(w_leo_, rng, head_scale);
  b_leo_ = make_param("head.b_leo", 1, 1);
  w_stop_ = make_param("head.w_stop", 1, h);
  init_gaussian(w_stop_, rng, head_scale);
  b_stop_ = make_param("head.b_stop", 1, 1);
  w_meo_ = make_param("head.w_meo", cfg.num_meo, 2 * h);
  init_gaussian(w_meo_, rng, 0.01 / std::sqrt(2.0 * h));
  b_meo_ = make_param("head.b_meo", cfg.num_meo, 1);
  w_v1_ = make_param("value.w1", h, h);
  init_gaussian(w_v1_, rng, 1.0 / std::sqrt(static_cast<double>(h)));
  b_v1_ = make_param("value.b1", h, 1);
  w_v2_ = make_param("value.w2", 1, h);
  init_gaussian(w_v2_, rng, 0.01 / std::sqrt(static_cast<double>(h)));
  b_v2_ = make_param("value.b2", 1, 1);
}

std::vector<ParamBlock*> PolicyNet::blocks() {
  std::vector<ParamBlock*> out;
  for (int l = 0; l < cfg_.num_layers; ++l) {
    out.push_back(&w_self_[l]);
    out.push_back(&w_nbr_[l]);
    out.push_back(&b_layer_[l]);
  }
  for (ParamBlock* p : {&w_leo_, &b_leo_, &w_stop_, &b_stop_, &w_meo_,
                        &b_meo_, &w_v1_, &b_v1_, &w_v2_, &b_v2_}) {
    out.push_back(p);
  }
  return out;
}

std::vector<const ParamBlock*> PolicyNet::blocks() const {
  auto mut = const_cast<PolicyNet*>(this)->blocks();
  return {mut.begin(), mut.end()};
}

void PolicyNet::zero_grad() {
  for (ParamBlock* p : blocks()) p->zero_grad();
}

PolicyNet::Forward PolicyNet::forward(const GraphInput& graph) const {
  if (graph.feature_dim != cfg_.feature_dim || graph.num_meo != cfg_.num_meo) {
    throw std::invalid_argument("graph does not match policy configuration");
  }
  int n = graph.num_nodes;
  int h = cfg_.hidden_dim;
  Forward f;
  f.graph = &graph;
  f.acts.resize(cfg_.num_layers + 1);
  f.nbr_means.resize(cfg_.num_layers);
  f.acts[0] = graph.features;

  for (int l = 0; l < cfg_.num_layers; ++l) {
    int d_in = l == 0 ? cfg_.feature_dim : h;
    const std::vector<double>& in = f.acts[l];
    std::vector<double>& mean = f.nbr_means[l];
    mean.assign(static_cast<std::size_t>(n) * d_in, 0.0);
    for (int v = 0; v < n; ++v) {
      const auto& nbrs = graph.neighbors[v];
      if (nbrs.empty()) continue;  // isolated node keeps a zero mean
      double inv = 1.0 / static_cast<double>(nbrs.size());
      double* mv = mean.data() + static_cast<std::size_t>(v) * d_in;
      for (int u : nbrs) {
        kern::axpy(inv, in.data() + static_cast<std::size_t>(u) * d_in, mv,
                   d_in);
      }
    }
    std::vector<double>& out = f.acts[l + 1];
    out.assign(static_cast<std::size_t>(n) * h, 0.0);
    std::vector<double> z(h);
    for (int v = 0; v < n; ++v) {
      const double* hv = in.data() + static_cast<std::size_t>(v) * d_in;
      const double* mv = mean.data() + static_cast<std::size_t>(v) * d_in;
      double* ov = out.data() + static_cast<std::size_t>(v) * h;
      kern::matvec(w_self_[l].w.data(), hv, z.data(), h, d_in);
      for (int r = 0; r < h; ++r) {
        z[r] += kern::dot(w_nbr_[l].w.data() + static_cast<std::size_t>(r) * d_in,
                          mv, d_in) +
                b_layer_[l].w[r];
        ov[r] = std::tanh(z[r]);
      }
    }
  }

  const std::vector<double>& top = f.acts[cfg_.num_layers];
  f.pooled.assign(h, 0.0);
  double inv_n = 1.0 / static_cast<double>(n);
  for (int v = 0; v < n; ++v) {
    kern::axpy(inv_n, top.data() + static_cast<std::size_t>(v) * h,
               f.pooled.data(), h);
  }

  f.leo_logits.resize(graph.num_leo + 1);
  for (int j = 0; j < graph.num_leo; ++j) {
    f.leo_logits[j] = kern::dot(w_leo_.w.data(),
                                top.data() + static_cast<std::size_t>(j) * h,
                                h) +
                      b_leo_.w[0];
  }
  f.leo_logits[graph.num_leo] =
      kern::dot(w_stop_.w.data(), f.pooled.data(), h) + b_stop_.w[0];

  f.value_hidden.resize(h);
  std::vector<double> z1(h);
  kern::matvec(w_v1_.w.data(), f.pooled.data(), z1.data(), h, h);
  for (int r = 0; r < h; ++r) {
    f.value_hidden[r] = std::tanh(z1[r] + b_v1_.w[r]);
  }
  f.value = kern::dot(w_v2_.w.data(), f.value_hidden.data(), h) + b_v2_.w[0];
  return f;
}

std::vector<double> PolicyNet::meo_logits(const Forward& f, int leo) const {
  int h = cfg_.hidden_dim;
  std::vector<double> cat(2 * h);
  std::copy(f.pooled.begin(), f.pooled.end(), cat.begin());
  const double* hv = f.acts[cfg_.num_layers].data() +
                     static_cast<std::size_t>(leo) * h;
  std::copy(hv, hv + h, cat.begin() + h);
  std::vector<double> out(cfg_.num_meo);
  kern::matvec(w_meo_.w.data(), cat.data(), out.data(), cfg_.num_meo, 2 * h);
  for (int i = 0; i < cfg_.num_meo; ++i) out[i] += b_meo_.w[i];
  return out;
}

AgentAction PolicyNet::sample_action(const Forward& f, const ActionMasks& masks,
                                     int max_moves, Rng& rng, double* log_prob,
                                     double* entropy) const {
  AgentAction action;
  double lp = 0.0, ent = 0.0;
  int stop_idx = f.graph->num_leo;
  std::vector<std::uint8_t> leo_mask = masks.leo_or_stop;
  for (int step = 0; step < max_moves; ++step) {
    MaskedCategorical leo_dist = masked_softmax(f.leo_logits, leo_mask);
    int choice = sample_categorical(leo_dist, rng);
    lp += leo_dist.log_probs[choice];
    ent += leo_dist.entropy;
    if (choice == stop_idx) {
      action.stopped = true;
      if (log_prob) *log_prob = lp;
      if (entropy) *entropy = ent;
      return action;
    }
    MaskedCategorical meo_dist =
        masked_softmax(meo_logits(f, choice), masks.meo);
    int target = sample_categorical(meo_dist, rng);
    lp += meo_dist.log_probs[target];
    ent += meo_dist.entropy;
    action.moves.push_back({choice, target});
    leo_mask[choice] = 0;
  }
  action.stopped = false;  // budget exhausted without an explicit STOP
  if (log_prob) *log_prob = lp;
  if (entropy) *entropy = ent;
  return action;
}

AgentAction PolicyNet::greedy_action(const Forward& f, const ActionMasks& masks,
                                     int max_moves) const {
  AgentAction action;
  int stop_idx = f.graph->num_leo;
  std::vector<std::uint8_t> leo_mask = masks.leo_or_stop;
  for (int step = 0; step < max_moves; ++step) {
    MaskedCategorical leo_dist = masked_softmax(f.leo_logits, leo_mask);
    int choice = argmax_categorical(leo_dist);
    if (choice == stop_idx) {
      action.stopped = true;
      return action;
    }
    MaskedCategorical meo_dist =
        masked_softmax(meo_logits(f, choice), masks.meo);
    action.moves.push_back({choice, argmax_categorical(meo_dist)});
    leo_mask[choice] = 0;
  }
  action.stopped = false;
  return action;
}

// Visits every categorical factor of a recorded action in order.
template <typename OnFactor>
void PolicyNet::walk_action(const Forward& f, const ActionMasks& masks,
                            int max_moves, const AgentAction& action,
                            OnFactor&& on_factor) const {
  int stop_idx = f.graph->num_leo;
  if (static_cast<int>(action.moves.size()) > max_moves) {
    throw std::invalid_argument("action exceeds move budget");
  }
  std::vector<std::uint8_t> leo_mask = masks.leo_or_stop;
  for (const Move& m : action.moves) {
    MaskedCategorical leo_dist = masked_softmax(f.leo_logits, leo_mask);
    on_factor(leo_dist, m.leo, -1);
    MaskedCategorical meo_dist = masked_softmax(meo_logits(f, m.leo), masks.meo);
    on_factor(meo_dist, m.meo, m.leo);
    leo_mask[m.leo] = 0;
  }
  if (static_cast<int>(action.moves.size()) < max_moves) {
    MaskedCategorical leo_dist = masked_softmax(f.leo_logits, leo_mask);
    on_factor(leo_dist, stop_idx, -1);
  }
}

void PolicyNet::action_log_prob(const Forward& f, const ActionMasks& masks,
                                int max_moves, const AgentAction& action,
                                double* log_prob, double* entropy) const {
  double lp = 0.0, ent = 0.0;
  walk_action(f, masks, max_moves, action,
              [&](const MaskedCategorical& dist, int chosen, int) {
                lp += dist.log_probs[chosen];
                ent += dist.entropy;
              });
  if (log_prob) *log_prob = lp;
  if (entropy) *entropy = ent;
}

void PolicyNet::backward(const Forward& f, const ActionMasks& masks,
                         int max_moves, const AgentAction& action,
                         double coef_logp, double coef_entropy, double dvalue) {
  const GraphInput& graph = *f.graph;
  int n = graph.num_nodes;
  int h = cfg_.hidden_dim;
  int nl = graph.num_leo;
  const std::vector<double>& top = f.acts[cfg_.num_layers];

  std::vector<double> d_top(static_cast<std::size_t>(n) * h, 0.0);
  std::vector<double> d_pooled(h, 0.0);
  std::vector<double> d_leo_logits(nl + 1, 0.0);
  std::vector<double> dcat(2 * h);

  walk_action(f, masks, max_moves, action,
              [&](const MaskedCategorical& dist, int chosen, int leo_for_meo) {
                std::vector<double> dz = entropy_grad(dist);
                for (double& v : dz) v *= coef_entropy;
                for (std::size_t i = 0; i < dist.probs.size(); ++i) {
                  if (dist.probs[i] > 0.0) dz[i] -= coef_logp * dist.probs[i];
                }
                dz[chosen] += coef_logp;
                if (leo_for_meo < 0) {
                  for (std::size_t i = 0; i < dz.size(); ++i) {
                    d_leo_logits[i] += dz[i];
                  }
                } else {
                  std::copy(f.pooled.begin(), f.pooled.end(), dcat.begin());
                  const double* hv =
                      top.data() + static_cast<std::size_t>(leo_for_meo) * h;
                  std::copy(hv, hv + h, dcat.begin() + h);
                  kern::ger_acc(w_meo_.g.data(), dz.data(), dcat.data(),
                                cfg_.num_meo, 2 * h);
                  for (int i = 0; i < cfg_.num_meo; ++i) b_meo_.g[i] += dz[i];
                  std::vector<double> dc(2 * h, 0.0);
                  kern::matvec_t_acc(w_meo_.w.data(), dz.data(), dc.data(),
                                     cfg_.num_meo, 2 * h);
                  kern::axpy(1.0, dc.data(), d_pooled.data(), h);
                  kern::axpy(1.0, dc.data() + h,
                             d_top.data() + static_cast<std::size_t>(leo_for_meo) * h,
                             h);
                }
              });

  for (int j = 0; j < nl; ++j) {
    double dz = d_leo_logits[j];
    if (dz == 0.0) continue;
    const double* hv = top.data() + static_cast<std::size_t>(j) * h;
    kern::axpy(dz, hv, w_leo_.g.data(), h);
    kern::axpy(dz, w_leo_.w.data(),
               d_top.data() + static_cast<std::size_t>(j) * h, h);
    b_leo_.g[0] += dz;
  }
  {
    double dz = d_leo_logits[nl];
    if (dz != 0.0) {
      kern::axpy(dz, f.pooled.data(), w_stop_.g.data(), h);
      kern::axpy(dz, w_stop_.w.data(), d_pooled.data(), h);
      b_stop_.g[0] += dz;
    }
  }

  if (dvalue != 0.0) {
    kern::axpy(dvalue, f.value_hidden.data(), w_v2_.g.data(), h);
    b_v2_.g[0] += dvalue;
    std::vector<double> dz1(h);
    for (int r = 0; r < h; ++r) {
      double hv = f.value_hidden[r];
      dz1[r] = dvalue * w_v2_.w[r] * (1.0 - hv * hv);
    }
    kern::ger_acc(w_v1_.g.data(), dz1.data(), f.pooled.data(), h, h);
    for (int r = 0; r < h; ++r) b_v1_.g[r] += dz1[r];
    kern::matvec_t_acc(w_v1_.w.data(), dz1.data(), d_pooled.data(), h, h);
  }

  double inv_n = 1.0 / static_cast<double>(n);
  for (int v = 0; v < n; ++v) {
    kern::axpy(inv_n, d_pooled.data(),
               d_top.data() + static_cast<std::size_t>(v) * h, h);
  }

  // Message-passing layers, top down.
  std::vector<double> d_out = std::move(d_top);
  for (int l = cfg_.num_layers - 1; l >= 0; --l) {
    int d_in = l == 0 ? cfg_.feature_dim : h;
    const std::vector<double>& out = f.acts[l + 1];
    const std::vector<double>& in = f.acts[l];
    const std::vector<double>& mean = f.nbr_means[l];
    std::vector<double> d_in_acc(static_cast<std::size_t>(n) * d_in, 0.0);
    std::vector<double> dz(h), dm(d_in);
    for (int v = 0; v < n; ++v) {
      const double* ov = out.data() + static_cast<std::size_t>(v) * h;
      const double* gv = d_out.data() + static_cast<std::size_t>(v) * h;
      for (int r = 0; r < h; ++r) dz[r] = gv[r] * (1.0 - ov[r] * ov[r]);
      const double* hv = in.data() + static_cast<std::size_t>(v) * d_in;
      const double* mv = mean.data() + static_cast<std::size_t>(v) * d_in;
      kern::ger_acc(w_self_[l].g.data(), dz.data(), hv, h, d_in);
      kern::ger_acc(w_nbr_[l].g.data(), dz.data(), mv, h, d_in);
      for (int r = 0; r < h; ++r) b_layer_[l].g[r] += dz[r];
      kern::matvec_t_acc(w_self_[l].w.data(), dz.data(),
                         d_in_acc.data() + static_cast<std::size_t>(v) * d_in,
                         h, d_in);
      const auto& nbrs = graph.neighbors[v];
      if (!nbrs.empty()) {
        std::fill(dm.begin(), dm.end(), 0.0);
        kern::matvec_t_acc(w_nbr_[l].w.data(), dz.data(), dm.data(), h, d_in);
        double inv = 1.0 / static_cast<double>(nbrs.size());
        for (int u : nbrs) {
          kern::axpy(inv, dm.data(),
                     d_in_acc.data() + static_cast<std::size_t>(u) * d_in,
                     d_in);
        }
      }
    }
    d_out = std::move(d_in_acc);
  }
}

GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<std::uint8_t>& dones,
                      double bootstrap_value, double gamma,
                      double gae_lambda) {
  std::size_t t_max = rewards.size();
  if (values.size() != t_max || dones.size() != t_max) {
    throw std::invalid_argument("mismatched GAE input lengths");
  }
  GaeResult out;
  out.advantages.assign(t_max, 0.0);
  out.returns.assign(t_max, 0.0);
  double last_gae = 0.0;
  for (std::size_t i = t_max; i-- > 0;) {
    double next_value = (i + 1 < t_max) ? values[i + 1] : bootstrap_value;
    double not_done = dones[i] ? 0.0 : 1.0;
    double delta = rewards[i] + gamma * next_value * not_done - values[i];
    last_gae = delta + gamma * gae_lambda * not_done * last_gae;
    out.advantages[i] = last_gae;
    out.returns[i] = out.advantages[i] + values[i];
  }
  return out;
}

namespace {

ActionMasks full_masks(int num_leo, int num_meo) {
  ActionMasks m;
  m.leo_or_stop.assign(num_leo + 1, 1);
  m.meo.assign(num_meo, 1);
  return m;
}

// Fisher-Yates with our own index draws so shuffles are reproducible
// across standard libraries.
void shuffle_indices(std::vector<int>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace

UpdateStats ppo_update(PolicyNet& net, Adam& adam,
                       const std::vector<TransitionRecord>& buffer,
                       double bootstrap_value, const TrainConfig& cfg,
                       Rng& rng) {
  if (buffer.empty()) throw std::invalid_argument("empty transition buffer");
  std::size_t t_max = buffer.size();
  std::vector<double> rewards(t_max), values(t_max);
  std::vector<std::uint8_t> dones(t_max);
  for (std::size_t i = 0; i < t_max; ++i) {
    rewards[i] = buffer[i].reward;
    values[i] = buffer[i].value;
    dones[i] = buffer[i].done ? 1 : 0;
  }
  GaeResult gae = compute_gae(rewards, values, dones, bootstrap_value,
                              cfg.gamma, cfg.gae_lambda);

  // Buffer-wide advantage normalization.
  double mean = kern::sum(gae.advantages.data(), t_max) / t_max;
  double var = 0.0;
  for (double a : gae.advantages) var += (a - mean) * (a - mean);
  double stddev = std::sqrt(var / t_max);
  for (double& a : gae.advantages) a = (a - mean) / (stddev + 1e-8);

  std::vector<int> indices(t_max);
  for (std::size_t i = 0; i < t_max; ++i) indices[i] = static_cast<int>(i);

  UpdateStats stats;
  std::vector<ParamBlock*> blocks = net.blocks();
  for (int epoch = 0; epoch < cfg.update_epochs; ++epoch) {
    shuffle_indices(indices, rng);
    for (std::size_t start = 0; start < t_max;
         start += static_cast<std::size_t>(cfg.minibatch_size)) {
      std::size_t end =
          std::min(t_max, start + static_cast<std::size_t>(cfg.minibatch_size));
      double mb_n = static_cast<double>(end - start);
      net.zero_grad();
      double pg_sum = 0.0, v_sum = 0.0, ent_sum = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const TransitionRecord& rec = buffer[indices[k]];
        Observation obs = encode(rec.state, *rec.scenario);
        GraphInput graph = make_graph_input(obs);
        PolicyNet::Forward fwd = net.forward(graph);
        ActionMasks masks = full_masks(graph.num_leo, graph.num_meo);
        double logp = 0.0, ent = 0.0;
        net.action_log_prob(fwd, masks, cfg.k_moves, rec.action, &logp, &ent);
        double ratio = std::exp(logp - rec.log_prob);
        double adv = gae.advantages[indices[k]];
        double unclipped = ratio * adv;
        double clipped =
            std::clamp(ratio, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon) *
            adv;
        double vdiff = fwd.value - gae.returns[indices[k]];
        pg_sum += -std::min(unclipped, clipped);
        v_sum += vdiff * vdiff;
        ent_sum += ent;
        double coef_logp =
            unclipped <= clipped ? -adv * ratio / mb_n : 0.0;
        double coef_entropy = -cfg.entropy_coef / mb_n;
        double dvalue = cfg.value_coef * 2.0 * vdiff / mb_n;
        net.backward(fwd, masks, cfg.k_moves, rec.action, coef_logp,
                     coef_entropy, dvalue);
      }
      adam.step(blocks);
      stats.policy_loss += pg_sum / mb_n;
      stats.value_loss += v_sum / mb_n;
      stats.entropy += ent_sum / mb_n;
      stats.minibatches += 1;
    }
  }
  if (stats.minibatches > 0) {
    stats.policy_loss /= stats.minibatches;
    stats.value_loss /= stats.minibatches;
    stats.entropy /= stats.minibatches;
  }
  return stats;
}

TrainResult train(const std::vector<ScenarioBase>& pool,
                  const EvalParams& eval_params, const TrainConfig& cfg) {
  cfg.validate();
  if (pool.empty()) throw std::invalid_argument("empty scenario pool");
  int num_meo = pool.front().snapshot->num_meo;
  for (const ScenarioBase& base : pool) {
    if (base.snapshot->num_meo != num_meo) {
      throw std::invalid_argument("scenario pool mixes MEO counts");
    }
  }

  PolicyConfig pcfg;
  pcfg.num_meo = num_meo;
  pcfg.feature_dim = 5 + num_meo;
  pcfg.hidden_dim = cfg.hidden_dim;
  pcfg.num_layers = cfg.num_layers;

  TrainResult result;
  result.net = std::make_shared<PolicyNet>(pcfg, split_seed(cfg.seed, 0));
  result.adam = std::make_shared<Adam>(cfg.learning_rate);
  Rng rng(split_seed(cfg.seed, 1));

  EnvConfig env_cfg;
  env_cfg.max_steps = cfg.max_steps;
  env_cfg.max_moves_per_step = cfg.k_moves;
  env_cfg.gamma = cfg.gamma;
  env_cfg.move_penalty = cfg.move_penalty;

  std::vector<TransitionRecord> buffer;
  buffer.reserve(cfg.buffer_size);
  std::shared_ptr<const Scenario> scenario;
  std::unique_ptr<Env> env;
  UpdateStats last_stats;

  for (long episode = 1; episode <= cfg.max_episodes; ++episode) {
    if ((episode - 1) % cfg.f_switch == 0) {
      const ScenarioBase& base =
          pool[uniform_index(rng, pool.size())];
      Allocation d0 = uniform01(rng) < cfg.p_nearest_init
                          ? nearest_meo_allocation(*base.snapshot)
                          : uniform_random_allocation(*base.snapshot, rng);
      scenario = std::make_shared<const Scenario>(make_scenario(
          base.id, base.snapshot, base.traffic, std::move(d0), eval_params));
      env = std::make_unique<Env>(scenario, env_cfg);
    }
    Observation obs = env->reset();
    double reward_sum = 0.0;
    for (int step = 0; step < cfg.max_steps; ++step) {
      GraphInput graph = make_graph_input(obs);
      PolicyNet::Forward fwd = result.net->forward(graph);
      ActionMasks masks = env->valid_actions_mask();
      double logp = 0.0, ent = 0.0;
      AgentAction action = result.net->sample_action(fwd, masks, cfg.k_moves,
                                                     rng, &logp, &ent);
      TransitionRecord rec;
      rec.scenario = scenario;
      rec.state = env->allocation();
      rec.action = action;
      rec.log_prob = logp;
      rec.value = fwd.value;
      StepOutcome out = env->step({action.moves});
      rec.reward = out.reward;
      rec.done = out.done;
      reward_sum += out.reward;
      buffer.push_back(std::move(rec));
      obs = std::move(out.observation);

      if (static_cast<int>(buffer.size()) >= cfg.buffer_size) {
        double bootstrap = 0.0;
        if (!buffer.back().done) {
          GraphInput g2 = make_graph_input(obs);
          bootstrap = result.net->forward(g2).value;
        }
        last_stats =
            ppo_update(*result.net, *result.adam, buffer, bootstrap, cfg, rng);
        buffer.clear();
      }
    }
    result.log.push_back({episode, scenario->id, env->current_score(),
                          reward_sum, last_stats.policy_loss,
                          last_stats.value_loss, last_stats.entropy});
  }
  return result;
}

InferResult infer(const PolicyNet& net,
                  const std::shared_ptr<const Scenario>& scenario,
                  int max_steps, const EnvConfig& env_cfg) {
  Env env(scenario, env_cfg);
  auto t0 = std::chrono::steady_clock::now();
  Observation obs = env.reset();
  InferResult result;
  result.best_allocation = env.allocation();
  double best_score = env.current_score();
  result.score_trace.push_back(best_score);
  for (int step = 0; step < max_steps; ++step) {
    GraphInput graph = make_graph_input(obs);
    PolicyNet::Forward fwd = net.forward(graph);
    AgentAction action =
        net.greedy_action(fwd, env.valid_actions_mask(),
                          env_cfg.max_moves_per_step);
    StepOutcome out = env.step({action.moves});
    result.score_trace.push_back(out.score_after);
    if (out.score_after > best_score) {
      best_score = out.score_after;
      result.best_allocation = env.allocation();
    }
    obs = std::move(out.observation);
  }
  result.wall_clock_s = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  result.best_eval =
      evaluate(*scenario->snapshot, result.best_allocation, scenario->traffic,
               scenario->eval_params, &scenario->baseline);
  return result;
}

namespace {

nlohmann::json train_config_to_json(const TrainConfig& c) {
  return {{"gamma", c.gamma},
          {"gae_lambda", c.gae_lambda},
          {"clip_epsilon", c.clip_epsilon},
          {"learning_rate", c.learning_rate},
          {"entropy_coef", c.entropy_coef},
          {"value_coef", c.value_coef},
          {"buffer_size", c.buffer_size},
          {"minibatch_size", c.minibatch_size},
          {"update_epochs", c.update_epochs},
          {"f_switch", c.f_switch},
          {"max_episodes", c.max_episodes},
          {"max_steps", c.max_steps},
          {"hidden_dim", c.hidden_dim},
          {"num_layers", c.num_layers},
          {"k_moves", c.k_moves},
          {"move_penalty", c.move_penalty},
          {"p_nearest_init", c.p_nearest_init},
          {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.gamma = j.at("gamma");
  c.gae_lambda = j.at("gae_lambda");
  c.clip_epsilon = j.at("clip_epsilon");
  c.learning_rate = j.at("learning_rate");
  c.entropy_coef = j.at("entropy_coef");
  c.value_coef = j.at("value_coef");
  c.buffer_size = j.at("buffer_size");
  c.minibatch_size = j.at("minibatch_size");
  c.update_epochs = j.at("update_epochs");
  c.f_switch = j.at("f_switch");
  c.max_episodes = j.at("max_episodes");
  c.max_steps = j.at("max_steps");
  c.hidden_dim = j.at("hidden_dim");
  c.num_layers = j.at("num_layers");
  c.k_moves = j.at("k_moves");
  c.move_penalty = j.at("move_penalty");
  c.p_nearest_init = j.at("p_nearest_init");
  c.seed = j.at("seed");
  return c;
}

}  // namespace

void save_policy(std::ostream& out, const PolicyNet& net,
                 const TrainConfig& cfg, const Adam* adam) {
  nlohmann::json j;
  j["schema"] = 1;
  const PolicyConfig& pc = net.config();
  j["policy_config"] = {{"num_meo", pc.num_meo},
                        {"feature_dim", pc.feature_dim},
                        {"hidden_dim", pc.hidden_dim},
                        {"num_layers", pc.num_layers}};
  j["train_config"] = train_config_to_json(cfg);
  nlohmann::json blocks = nlohmann::json::array();
  for (const ParamBlock* p : net.blocks()) {
    blocks.push_back({{"name", p->name},
                      {"rows", p->rows},
                      {"cols", p->cols},
                      {"w", p->w}});
  }
  j["blocks"] = std::move(blocks);
  if (adam != nullptr) {
    j["adam"] = {{"t", adam->step_count()},
                 {"m", adam->moments_m()},
                 {"v", adam->moments_v()}};
  }
  out << j.dump();
}

LoadedPolicy load_policy(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("schema").get<int>() != 1) {
    throw std::runtime_error("unsupported checkpoint schema");
  }
  PolicyConfig pc;
  pc.num_meo = j.at("policy_config").at("num_meo");
  pc.feature_dim = j.at("policy_config").at("feature_dim");
  pc.hidden_dim = j.at("policy_config").at("hidden_dim");
  pc.num_layers = j.at("policy_config").at("num_layers");

  LoadedPolicy loaded;
  loaded.train_config = train_config_from_json(j.at("train_config"));
  loaded.net = std::make_shared<PolicyNet>(pc, 0);
  std::vector<ParamBlock*> blocks = loaded.net->blocks();
  const nlohmann::json& jb = j.at("blocks");
  if (jb.size() != blocks.size()) {
    throw std::runtime_error("checkpoint block count mismatch");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (jb[i].at("name").get<std::string>() != blocks[i]->name) {
      throw std::runtime_error("checkpoint block order mismatch");
    }
    std::vector<double> w = jb[i].at("w").get<std::vector<double>>();
    if (w.size() != blocks[i]->size()) {
      throw std::runtime_error("checkpoint block size mismatch");
    }
    blocks[i]->w = std::move(w);
  }
  loaded.adam = std::make_shared<Adam>(loaded.train_config.learning_rate);
  if (j.contains("adam")) {
    loaded.adam->set_step_count(j.at("adam").at("t").get<long>());
    loaded.adam->moments_m() =
        j.at("adam").at("m").get<std::vector<std::vector<double>>>();
    loaded.adam->moments_v() =
        j.at("adam").at("v").get<std::vector<std::vector<double>>>();
  }
  return loaded;
}

}  // namespace satprov
