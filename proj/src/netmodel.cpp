#include "satprov/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "satprov/kernels.hpp"

namespace satprov {

namespace {

double path_cost_intra(int domain_size, const EvalParams& p) {
  // Dijkstra-like SPF cost over the managed nodes.
  return p.c_ospf_s * domain_size * std::log2(domain_size + 1.0);
}

double path_cost_inter(int num_meo, const EvalParams& p) {
  // Pairwise route exchange across every controller pair.
  return p.c_bgp_s * static_cast<double>(num_meo) * num_meo;
}

double score_term(double ratio, const EvalParams& p) {
  return ratio <= 1.0 - p.eps_clip ? 0.5 * std::log(1.0 - ratio) : p.penalty;
}

}  // namespace

int senior_medoid(const Snapshot& snap) {
  int best = 0;
  double best_total = std::numeric_limits<double>::infinity();
  for (int i = 0; i < snap.num_meo; ++i) {
    double total = 0.0;
    for (int k = 0; k < snap.num_meo; ++k) {
      total += distance(snap, {Role::kMeo, i}, {Role::kMeo, k});
    }
    if (total < best_total) {
      best_total = total;
      best = i;
    }
  }
  return best;
}

void validate_allocation(const Snapshot& snap, const Allocation& alloc) {
  if (alloc.num_leo() != snap.num_leo) {
    throw std::invalid_argument("allocation size does not match LEO count");
  }
  if (alloc.senior < 0 || alloc.senior >= snap.num_meo) {
    throw std::invalid_argument("senior controller index out of range");
  }
  for (int c : alloc.controller_of) {
    if (c < 0 || c >= snap.num_meo) {
      throw std::invalid_argument("controller index out of range");
    }
  }
}

Evaluator::Evaluator(const Snapshot& snap, const TrafficScenario& tr,
                     const EvalParams& params)
    : snap_(&snap),
      tr_(&tr),
      params_(params),
      num_leo_(snap.num_leo),
      num_meo_(snap.num_meo) {
  leo_meo_speed_.resize(static_cast<std::size_t>(num_leo_) * num_meo_);
  for (int j = 0; j < num_leo_; ++j) {
    for (int i = 0; i < num_meo_; ++i) {
      leo_meo_speed_[static_cast<std::size_t>(j) * num_meo_ + i] =
          propagation_delay_s(distance(snap, {Role::kLeo, j}, {Role::kMeo, i}));
    }
  }
  meo_meo_dist_.resize(static_cast<std::size_t>(num_meo_) * num_meo_);
  for (int a = 0; a < num_meo_; ++a) {
    for (int b = 0; b < num_meo_; ++b) {
      meo_meo_dist_[static_cast<std::size_t>(a) * num_meo_ + b] =
          distance(snap, {Role::kMeo, a}, {Role::kMeo, b});
    }
  }
  t_rowsum_.resize(num_leo_);
  f_rowsum_.resize(num_leo_);
  for (int j = 0; j < num_leo_; ++j) {
    t_rowsum_[j] = kern::sum(tr.volume.data() + static_cast<std::size_t>(j) * num_leo_,
                             num_leo_);
    f_rowsum_[j] = kern::sum(tr.flows.data() + static_cast<std::size_t>(j) * num_leo_,
                             num_leo_);
  }
  total_flows_ = kern::sum(f_rowsum_.data(), num_leo_);
  indicator_.resize(static_cast<std::size_t>(num_meo_) * num_leo_);
  intra_vol_.resize(num_leo_);
  intra_flow_.resize(num_leo_);
  domain_size_.resize(num_meo_);
}

EvalResult Evaluator::evaluate(const Allocation& alloc,
                               const EvalResult* baseline) {
  validate_allocation(*snap_, alloc);
  const auto& c_of = alloc.controller_of;

  std::fill(indicator_.begin(), indicator_.end(), 0.0);
  std::fill(domain_size_.begin(), domain_size_.end(), 0);
  for (int j = 0; j < num_leo_; ++j) {
    indicator_[static_cast<std::size_t>(c_of[j]) * num_leo_ + j] = 1.0;
    domain_size_[c_of[j]] += 1;
  }
  for (int j = 0; j < num_leo_; ++j) {
    const double* t_row = tr_->volume.data() + static_cast<std::size_t>(j) * num_leo_;
    const double* f_row = tr_->flows.data() + static_cast<std::size_t>(j) * num_leo_;
    const double* ind = indicator_.data() + static_cast<std::size_t>(c_of[j]) * num_leo_;
    intra_vol_[j] = kern::dot(t_row, ind, num_leo_);
    intra_flow_[j] = kern::dot(f_row, ind, num_leo_);
  }

  EvalResult r;
  r.d_intra.assign(num_meo_, 0.0);

  double ts_senior = tr_->sync_unit * num_meo_;
  std::vector<double> senior_speed(num_meo_);
  std::vector<double> intra_cost(num_meo_, 0.0);
  std::vector<double> inter_vol(num_meo_, 0.0);
  std::vector<double> max_member_speed(num_meo_, 0.0);
  for (int i = 0; i < num_meo_; ++i) {
    senior_speed[i] = propagation_delay_s(
        meo_meo_dist_[static_cast<std::size_t>(i) * num_meo_ + alloc.senior]);
  }
  for (int j = 0; j < num_leo_; ++j) {
    int i = c_of[j];
    double sp = leo_meo_speed_[static_cast<std::size_t>(j) * num_meo_ + i];
    intra_cost[i] += intra_vol_[j] * sp;
    inter_vol[i] += t_rowsum_[j] - intra_vol_[j];
    max_member_speed[i] = std::max(max_member_speed[i], sp);
  }

  double max_senior_speed = 0.0;
  double dp_star = path_cost_inter(num_meo_, params_);
  double max_intra = 0.0;
  double inter_flow_cost = 0.0;
  for (int i = 0; i < num_meo_; ++i) {
    double ts_i = tr_->sync_unit * domain_size_[i];
    r.o_syn += ts_i * max_member_speed[i];
    max_senior_speed = std::max(max_senior_speed, senior_speed[i]);
    double dp_i = path_cost_intra(domain_size_[i], params_);
    r.o_path += dp_i;
    r.o_flow += intra_cost[i] + inter_vol[i] * senior_speed[i];
    r.d_intra[i] = ts_senior * senior_speed[i] + dp_i + intra_cost[i];
    max_intra = std::max(max_intra, r.d_intra[i]);
    inter_flow_cost += inter_vol[i] * senior_speed[i];
  }
  r.o_syn += ts_senior * max_senior_speed;
  r.o_path += dp_star;
  r.o_total = r.o_syn + r.o_flow + r.o_path;
  r.d_inter = max_intra + inter_flow_cost + dp_star;

  if (total_flows_ > 0.0) {
    double weighted = 0.0;
    for (int j = 0; j < num_leo_; ++j) {
      double d_own = r.d_intra[c_of[j]];
      double cross = f_rowsum_[j] - intra_flow_[j];
      if (params_.charge_inter_to_all_flows) {
        weighted += f_rowsum_[j] * (d_own + r.d_inter);
      } else {
        weighted += f_rowsum_[j] * d_own + cross * r.d_inter;
      }
    }
    r.d_avg = weighted / total_flows_;
  }

  if (baseline != nullptr) {
    if (baseline->o_total == 0.0 || baseline->d_avg == 0.0) {
      throw std::domain_error("baseline with zero overhead or delay");
    }
    r.o_ratio = r.o_total / baseline->o_total;
    r.d_ratio = r.d_avg / baseline->d_avg;
  } else {
    r.o_ratio = 1.0;
    r.d_ratio = 1.0;
  }
  r.term_o = score_term(r.o_ratio, params_);
  r.term_d = score_term(r.d_ratio, params_);
  r.score = score(r.o_ratio, r.d_ratio, params_);
  return r;
}

double Evaluator::score_of(const Allocation& alloc,
                           const EvalResult& baseline) {
  return evaluate(alloc, &baseline).score;
}

double score(double o_ratio, double d_ratio, const EvalParams& params) {
  if (!std::isfinite(o_ratio) || !std::isfinite(d_ratio)) {
    throw std::domain_error("non-finite cost ratio");
  }
  return (1.0 - params.alpha) * score_term(o_ratio, params) +
         params.alpha * score_term(d_ratio, params);
}

EvalResult evaluate(const Snapshot& snap, const Allocation& alloc,
                    const TrafficScenario& tr, const EvalParams& params,
                    const EvalResult* baseline) {
  Evaluator ev(snap, tr, params);
  return ev.evaluate(alloc, baseline);
}

double sync_overhead(const Snapshot& snap, const Allocation& alloc,
                     const TrafficScenario& tr) {
  return evaluate(snap, alloc, tr, EvalParams{}).o_syn;
}

double flow_table_overhead(const Snapshot& snap, const Allocation& alloc,
                           const TrafficScenario& tr) {
  return evaluate(snap, alloc, tr, EvalParams{}).o_flow;
}

double path_overhead(const Allocation& alloc, int num_meo,
                     const EvalParams& params) {
  std::vector<int> size(num_meo, 0);
  for (int c : alloc.controller_of) size.at(c) += 1;
  double total = path_cost_inter(num_meo, params);
  for (int s : size) total += path_cost_intra(s, params);
  return total;
}

double intra_delay(const Snapshot& snap, const Allocation& alloc,
                   const TrafficScenario& tr, const EvalParams& params,
                   int controller) {
  if (controller < 0 || controller >= snap.num_meo) {
    throw std::out_of_range("controller index out of range");
  }
  return evaluate(snap, alloc, tr, params).d_intra[controller];
}

double inter_delay(const Snapshot& snap, const Allocation& alloc,
                   const TrafficScenario& tr, const EvalParams& params) {
  return evaluate(snap, alloc, tr, params).d_inter;
}

double avg_delay(const Snapshot& snap, const Allocation& alloc,
                 const TrafficScenario& tr, const EvalParams& params) {
  return evaluate(snap, alloc, tr, params).d_avg;
}

std::string eval_result_to_json(const EvalResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << "{\"o_syn\":" << r.o_syn << ",\"o_flow\":" << r.o_flow
      << ",\"o_path\":" << r.o_path << ",\"o_total\":" << r.o_total
      << ",\"d_intra\":[";
  for (std::size_t i = 0; i < r.d_intra.size(); ++i) {
    out << (i ? "," : "") << r.d_intra[i];
  }
  out << "],\"d_inter\":" << r.d_inter << ",\"d_avg\":" << r.d_avg
      << ",\"o_ratio\":" << r.o_ratio << ",\"d_ratio\":" << r.d_ratio
      << ",\"term_o\":" << r.term_o << ",\"term_d\":" << r.term_d
      << ",\"score\":" << r.score << "}";
  return out.str();
}

}  // namespace satprov
