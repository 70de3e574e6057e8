#ifndef SATPROV_BENCH_HPP_
#define SATPROV_BENCH_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "satprov/agent.hpp"
#include "satprov/baselines.hpp"

// Experiment harness: seeded scenario sets, training runs, the alpha and
// scale sweeps, and the algorithm comparison table. Every entry point is a
// pure function of the configuration, so repeated runs write identical
// data files (timing fields aside).

namespace satprov {

struct ExperimentConfig {
  int schema = 1;
  int num_leo = 50;
  int num_meo = 5;
  // Optional explicit shells; otherwise derived from the counts.
  std::optional<ShellConfig> leo_shell;
  std::optional<ShellConfig> meo_shell;
  long slot = 0;
  double slot_duration_s = 60.0;

  int n_flows = 1000;
  double volume_scale = 5.0;
  double sync_unit = 1.0;

  EvalParams eval;
  TrainConfig train;
  GAConfig ga;
  long greedy_max_iters = 256;
  long random_samples = 1000;
  std::string sweep_solver = "ga_kmeans";

  int scenario_count = 20;
  std::uint64_t scenario_seed = 42;
  std::string init_policy = "random";  // "random" | "nearest"

  std::vector<std::string> compare_methods = {"greedy", "ga_kmeans", "random"};
  std::vector<double> alphas = {0.1, 0.5, 0.9};
  std::vector<int> scale_leo_counts = {50, 100, 250, 500, 1000};
  long scale_train_episodes = 10;
  int scale_scenarios = 3;

  std::string out_dir = "out";
  std::string checkpoint;  // policy file for the "policy" compare method
};

ExperimentConfig config_from_json_file(const std::filesystem::path& path);
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);

// planes x sats decomposition: the divisor of n closest to sqrt(n).
ShellConfig shell_for_count(int n, double altitude_km, double inclination_deg,
                            double phase_offset = 0.25);

ShellConfig effective_leo_shell(const ExperimentConfig& cfg);
ShellConfig effective_meo_shell(const ExperimentConfig& cfg);

// Scenario k uses slot cfg.slot + k and a seed split from scenario_seed.
std::vector<ScenarioBase> make_scenario_bases(const ExperimentConfig& cfg,
                                              int count);
std::shared_ptr<const Scenario> make_eval_scenario(const ExperimentConfig& cfg,
                                                   const ScenarioBase& base,
                                                   int index);

struct TrainingArtifacts {
  std::filesystem::path metrics_csv;
  std::filesystem::path checkpoint;
  std::vector<EpisodeMetric> log;
  std::vector<double> smoothed_score;
};

// Trains on the configured pool; writes per-episode metrics (plus a
// window-100 smoothed score column) and the final checkpoint.
TrainingArtifacts run_training(const ExperimentConfig& cfg);

struct AlphaRow {
  double alpha = 0.0;
  double mean_term_o = 0.0, std_term_o = 0.0;
  double mean_term_d = 0.0, std_term_d = 0.0;
  double mean_score = 0.0, std_score = 0.0;
  int scenarios = 0;
};

std::vector<AlphaRow> sweep_alpha(const ExperimentConfig& cfg,
                                  const std::vector<double>& alphas);
void write_alpha_csv(const std::filesystem::path& path,
                     const std::vector<AlphaRow>& rows);

struct ScaleRow {
  int num_leo = 0;
  double mean_score = 0.0;
  double mean_infer_s = 0.0, std_infer_s = 0.0;
  double eval_call_s = 0.0;  // one full evaluation at this size
  int scenarios = 0;
};

struct ScaleSweep {
  std::vector<ScaleRow> rows;
  std::optional<double> slope;  // log time vs log N_L
};

ScaleSweep sweep_scale(const ExperimentConfig& cfg,
                       const std::vector<int>& leo_counts);
void write_scale_json(const std::filesystem::path& path, const ScaleSweep& s);

struct ComparisonRow {
  std::string method;
  double mean_score = 0.0, std_score = 0.0;
  double mean_wall_clock_s = 0.0, std_wall_clock_s = 0.0;
  double mean_evaluations = 0.0;
  int scenarios = 0;
};

struct ComparisonTable {
  std::string instance;  // descriptor: sizes, scenario count, seed
  std::uint64_t seed = 0;
  std::vector<ComparisonRow> rows;
};

ComparisonTable compare_algorithms(const ExperimentConfig& cfg,
                                   const std::vector<std::string>& methods);
std::string comparison_to_json(const ComparisonTable& table);

// Runs one method on one scenario (method names as in compare_methods).
SolverResult solve_with_method(const std::string& method,
                               const ExperimentConfig& cfg,
                               const std::shared_ptr<const Scenario>& scenario,
                               std::uint64_t seed,
                               const PolicyNet* policy);

// Scenario files written by the generate subcommand.
void write_scenario_files(const ExperimentConfig& cfg,
                          const std::filesystem::path& dir);
std::shared_ptr<const Scenario> load_scenario_file(
    const std::filesystem::path& json_path);
Allocation load_allocation_file(const std::filesystem::path& path,
                                int num_leo, int num_meo);

}  // namespace satprov

#endif  // SATPROV_BENCH_HPP_
