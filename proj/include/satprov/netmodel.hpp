#ifndef SATPROV_NETMODEL_HPP_
#define SATPROV_NETMODEL_HPP_

#include <string>
#include <vector>

#include "satprov/allocation.hpp"
#include "satprov/constellation.hpp"
#include "satprov/traffic.hpp"

// Cost model for a domain allocation: control-plane overheads (sync, flow
// table, path computation), intra/inter-domain delays, and the composite
// score that both the learned policy and the search baselines maximize.

namespace satprov {

struct EvalParams {
  double alpha = 0.5;       // weight between overhead and delay terms
  double c_ospf_s = 1e-4;   // intra-domain path computation coefficient
  double c_bgp_s = 1e-3;    // inter-domain path computation coefficient
  double penalty = -5.0;    // per-term score when a ratio shows no improvement
  double eps_clip = 1e-6;   // guards log(0) at ratio -> 1
  // When true, every flow is charged the inter-domain delay in the average
  // (the literal summation reading); default charges it to cross-domain
  // flows only.
  bool charge_inter_to_all_flows = false;
};

struct EvalResult {
  double o_syn = 0.0;
  double o_flow = 0.0;
  double o_path = 0.0;
  double o_total = 0.0;
  std::vector<double> d_intra;  // one per controller
  double d_inter = 0.0;
  double d_avg = 0.0;
  double o_ratio = 1.0;
  double d_ratio = 1.0;
  double term_o = 0.0;  // enhanced overhead, (1-alpha)-weighted summand
  double term_d = 0.0;  // enhanced delay, alpha-weighted summand
  double score = 0.0;
};

// MEO minimizing total distance to the other MEOs (ties to lowest index).
int senior_medoid(const Snapshot& snap);

void validate_allocation(const Snapshot& snap, const Allocation& alloc);

double sync_overhead(const Snapshot& snap, const Allocation& alloc,
                     const TrafficScenario& tr);
double flow_table_overhead(const Snapshot& snap, const Allocation& alloc,
                           const TrafficScenario& tr);
double path_overhead(const Allocation& alloc, int num_meo,
                     const EvalParams& params);
// Throws std::out_of_range for an invalid controller index.
double intra_delay(const Snapshot& snap, const Allocation& alloc,
                   const TrafficScenario& tr, const EvalParams& params,
                   int controller);
double inter_delay(const Snapshot& snap, const Allocation& alloc,
                   const TrafficScenario& tr, const EvalParams& params);
double avg_delay(const Snapshot& snap, const Allocation& alloc,
                 const TrafficScenario& tr, const EvalParams& params);

// Composite score from already-normalized cost ratios. Each term is
// log(1-ratio)/2 while the ratio shows improvement and the constant penalty
// otherwise. Throws std::domain_error on non-finite ratios.
double score(double o_ratio, double d_ratio, const EvalParams& params);

// Full evaluation. With a baseline, ratios are relative to its o_total and
// d_avg (throws std::domain_error if either is zero); without one the
// allocation is its own baseline and both ratios are 1.
EvalResult evaluate(const Snapshot& snap, const Allocation& alloc,
                    const TrafficScenario& tr, const EvalParams& params,
                    const EvalResult* baseline = nullptr);

// Reusable evaluator for hot paths: precomputes allocation-independent
// geometry and traffic aggregates once. Not safe to share one instance
// across threads; use one per thread.
class Evaluator {
 public:
  Evaluator(const Snapshot& snap, const TrafficScenario& tr,
            const EvalParams& params);

  EvalResult evaluate(const Allocation& alloc,
                      const EvalResult* baseline = nullptr);
  double score_of(const Allocation& alloc, const EvalResult& baseline);

  const EvalParams& params() const { return params_; }
  int num_leo() const { return num_leo_; }
  int num_meo() const { return num_meo_; }

 private:
  const Snapshot* snap_;
  const TrafficScenario* tr_;
  EvalParams params_;
  int num_leo_, num_meo_;
  std::vector<double> leo_meo_speed_;  // N_L x N_M, seconds
  std::vector<double> meo_meo_dist_;   // N_M x N_M, meters
  std::vector<double> t_rowsum_, f_rowsum_;
  double total_flows_ = 0.0;
  // Workspace, rebuilt per evaluation.
  std::vector<double> indicator_;   // N_M x N_L, 1.0 where j in H_i
  std::vector<double> intra_vol_;   // per LEO: traffic to own domain
  std::vector<double> intra_flow_;  // per LEO: flows to own domain
  std::vector<int> domain_size_;
};

std::string eval_result_to_json(const EvalResult& r);

}  // namespace satprov

#endif  // SATPROV_NETMODEL_HPP_
