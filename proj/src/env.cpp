#include "satprov/env.hpp"

#include <stdexcept>

namespace satprov {

Observation encode(const Allocation& alloc, const Scenario& scenario) {
  const Snapshot& snap = *scenario.snapshot;
  int nl = snap.num_leo, nm = snap.num_meo;
  Observation obs;
  obs.num_leo = nl;
  obs.num_meo = nm;
  obs.traffic_norm = scenario.traffic_norm;
  obs.visibility_edges = scenario.visibility_edges;

  obs.initial_onehot.assign(static_cast<std::size_t>(nl) * nm, 0.0);
  for (int j = 0; j < nl; ++j) {
    obs.initial_onehot[static_cast<std::size_t>(j) * nm +
                       scenario.initial_allocation.controller_of[j]] = 1.0;
  }
  obs.current_onehot.assign(static_cast<std::size_t>(nl) * nm, 0.0);
  for (int j = 0; j < nl; ++j) {
    obs.current_onehot[static_cast<std::size_t>(j) * nm +
                       alloc.controller_of[j]] = 1.0;
  }

  int fd = obs.feature_dim();
  obs.node_features.assign(static_cast<std::size_t>(nl + nm) * fd, 0.0);
  double pos_scale = 1.0 / snap.meo_radius_m;
  const std::vector<double>& load = *scenario.node_load;
  for (int v = 0; v < nl + nm; ++v) {
    double* f = obs.node_features.data() + static_cast<std::size_t>(v) * fd;
    const Vec3& p = snap.positions[v];
    f[0] = p.x * pos_scale;
    f[1] = p.y * pos_scale;
    f[2] = p.z * pos_scale;
    if (v < nl) {
      f[3] = load[v];
      f[4] = 0.0;
      f[5 + alloc.controller_of[v]] = 1.0;
    } else {
      f[3] = 0.0;
      f[4] = 1.0;
      f[5 + (v - nl)] = 1.0;  // controller identity
    }
  }

  obs.assignment_edges.reserve(nl);
  for (int j = 0; j < nl; ++j) {
    obs.assignment_edges.emplace_back(j, nl + alloc.controller_of[j]);
  }
  return obs;
}

Env::Env(std::shared_ptr<const Scenario> scenario, EnvConfig config)
    : scenario_(std::move(scenario)),
      config_(config),
      evaluator_(*scenario_->snapshot, scenario_->traffic,
                 scenario_->eval_params),
      current_(scenario_->initial_allocation) {
  if (scenario_->baseline.o_total <= 0.0 || scenario_->baseline.d_avg <= 0.0) {
    throw std::invalid_argument("scenario baseline is degenerate");
  }
  current_score_ = evaluator_.score_of(current_, scenario_->baseline);
}

Observation Env::reset() {
  current_ = scenario_->initial_allocation;
  step_count_ = 0;
  current_score_ = evaluator_.score_of(current_, scenario_->baseline);
  return encode(current_, *scenario_);
}

StepOutcome Env::step(const ActionSet& action) {
  int nl = scenario_->num_leo(), nm = scenario_->num_meo();
  if (static_cast<int>(action.moves.size()) > config_.max_moves_per_step) {
    throw std::invalid_argument("action exceeds per-step move budget");
  }
  for (std::size_t a = 0; a < action.moves.size(); ++a) {
    const Move& m = action.moves[a];
    if (m.leo < 0 || m.leo >= nl || m.meo < 0 || m.meo >= nm) {
      throw std::invalid_argument("move index out of range");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (action.moves[b].leo == m.leo) {
        throw std::invalid_argument("duplicate LEO in action");
      }
    }
  }

  StepOutcome out;
  out.score_before = current_score_;
  for (const Move& m : action.moves) current_.controller_of[m.leo] = m.meo;
  current_score_ = evaluator_.score_of(current_, scenario_->baseline);
  out.score_after = current_score_;
  out.moves_applied = static_cast<int>(action.moves.size());
  out.reward = config_.gamma * out.score_after - out.score_before -
               config_.move_penalty * out.moves_applied;
  step_count_ += 1;
  out.done = step_count_ >= config_.max_steps;
  out.observation = encode(current_, *scenario_);
  return out;
}

ActionMasks Env::valid_actions_mask() const {
  ActionMasks masks;
  masks.leo_or_stop.assign(scenario_->num_leo() + 1, 1);
  masks.meo.assign(scenario_->num_meo(), 1);
  return masks;
}

}  // namespace satprov
