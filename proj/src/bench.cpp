#include "satprov/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "satprov/stats.hpp"

namespace satprov {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path());
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

ShellConfig shell_from_json(const json& j, const ShellConfig& defaults) {
  ShellConfig s = defaults;
  s.altitude_km = j.value("altitude_km", s.altitude_km);
  s.inclination_deg = j.value("inclination_deg", s.inclination_deg);
  s.num_planes = j.value("num_planes", s.num_planes);
  s.sats_per_plane = j.value("sats_per_plane", s.sats_per_plane);
  s.phase_offset = j.value("phase_offset", s.phase_offset);
  return s;
}

json shell_to_json(const ShellConfig& s) {
  return {{"altitude_km", s.altitude_km},
          {"inclination_deg", s.inclination_deg},
          {"num_planes", s.num_planes},
          {"sats_per_plane", s.sats_per_plane},
          {"phase_offset", s.phase_offset}};
}

EvalParams eval_from_json(const json& j, const EvalParams& defaults) {
  EvalParams e = defaults;
  e.alpha = j.value("alpha", e.alpha);
  e.c_ospf_s = j.value("c_ospf_s", e.c_ospf_s);
  e.c_bgp_s = j.value("c_bgp_s", e.c_bgp_s);
  e.penalty = j.value("penalty", e.penalty);
  e.eps_clip = j.value("eps_clip", e.eps_clip);
  e.charge_inter_to_all_flows =
      j.value("charge_inter_to_all_flows", e.charge_inter_to_all_flows);
  if (e.alpha < 0.0 || e.alpha > 1.0) {
    throw std::invalid_argument("alpha must be in [0,1]");
  }
  if (e.penalty >= 0.0) {
    throw std::invalid_argument("penalty must be negative");
  }
  if (e.eps_clip <= 0.0 || e.eps_clip >= 1.0) {
    throw std::invalid_argument("eps_clip must be in (0,1)");
  }
  return e;
}

json eval_to_json(const EvalParams& e) {
  return {{"alpha", e.alpha},
          {"c_ospf_s", e.c_ospf_s},
          {"c_bgp_s", e.c_bgp_s},
          {"penalty", e.penalty},
          {"eps_clip", e.eps_clip},
          {"charge_inter_to_all_flows", e.charge_inter_to_all_flows}};
}

TrainConfig train_from_json(const json& j, const TrainConfig& defaults) {
  TrainConfig t = defaults;
  t.gamma = j.value("gamma", t.gamma);
  t.gae_lambda = j.value("gae_lambda", t.gae_lambda);
  t.clip_epsilon = j.value("clip_epsilon", t.clip_epsilon);
  t.learning_rate = j.value("learning_rate", t.learning_rate);
  t.entropy_coef = j.value("entropy_coef", t.entropy_coef);
  t.value_coef = j.value("value_coef", t.value_coef);
  t.buffer_size = j.value("buffer_size", t.buffer_size);
  t.minibatch_size = j.value("minibatch_size", t.minibatch_size);
  t.update_epochs = j.value("update_epochs", t.update_epochs);
  t.f_switch = j.value("f_switch", t.f_switch);
  t.max_episodes = j.value("max_episodes", t.max_episodes);
  t.max_steps = j.value("max_steps", t.max_steps);
  t.hidden_dim = j.value("hidden_dim", t.hidden_dim);
  t.num_layers = j.value("num_layers", t.num_layers);
  t.k_moves = j.value("k_moves", t.k_moves);
  t.move_penalty = j.value("move_penalty", t.move_penalty);
  t.p_nearest_init = j.value("p_nearest_init", t.p_nearest_init);
  t.seed = j.value("seed", t.seed);
  t.validate();
  return t;
}

GAConfig ga_from_json(const json& j, const GAConfig& defaults) {
  GAConfig g = defaults;
  g.population = j.value("population", g.population);
  g.generations = j.value("generations", g.generations);
  g.crossover_rate = j.value("crossover_rate", g.crossover_rate);
  g.mutation_rate = j.value("mutation_rate", g.mutation_rate);
  g.elitism = j.value("elitism", g.elitism);
  g.seed = j.value("seed", g.seed);
  g.validate();
  return g;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;
  cfg.schema = j.value("schema", 1);
  if (cfg.schema != 1) {
    throw std::invalid_argument("unsupported config schema");
  }
  if (j.contains("constellation")) {
    const json& c = j.at("constellation");
    cfg.num_leo = c.value("num_leo", cfg.num_leo);
    cfg.num_meo = c.value("num_meo", cfg.num_meo);
    if (c.contains("leo_shell")) {
      cfg.leo_shell = shell_from_json(c.at("leo_shell"), ShellConfig{});
    }
    if (c.contains("meo_shell")) {
      ShellConfig meo_default;
      meo_default.altitude_km = 8000.0;
      meo_default.inclination_deg = 55.0;
      cfg.meo_shell = shell_from_json(c.at("meo_shell"), meo_default);
    }
  }
  cfg.slot = j.value("slot", cfg.slot);
  cfg.slot_duration_s = j.value("slot_duration_s", cfg.slot_duration_s);
  if (j.contains("traffic")) {
    const json& t = j.at("traffic");
    cfg.n_flows = t.value("n_flows", cfg.n_flows);
    cfg.volume_scale = t.value("volume_scale", cfg.volume_scale);
    cfg.sync_unit = t.value("sync_unit", cfg.sync_unit);
  }
  if (j.contains("eval")) cfg.eval = eval_from_json(j.at("eval"), cfg.eval);
  if (j.contains("train")) cfg.train = train_from_json(j.at("train"), cfg.train);
  if (j.contains("ga")) cfg.ga = ga_from_json(j.at("ga"), cfg.ga);
  if (j.contains("solvers")) {
    const json& s = j.at("solvers");
    cfg.greedy_max_iters = s.value("greedy_max_iters", cfg.greedy_max_iters);
    cfg.random_samples = s.value("random_samples", cfg.random_samples);
    cfg.sweep_solver = s.value("sweep_solver", cfg.sweep_solver);
  }
  if (j.contains("scenarios")) {
    const json& s = j.at("scenarios");
    cfg.scenario_count = s.value("count", cfg.scenario_count);
    cfg.scenario_seed = s.value("seed", cfg.scenario_seed);
    cfg.init_policy = s.value("init", cfg.init_policy);
  }
  cfg.compare_methods =
      j.value("compare_methods", cfg.compare_methods);
  cfg.alphas = j.value("alphas", cfg.alphas);
  if (j.contains("scale")) {
    const json& s = j.at("scale");
    cfg.scale_leo_counts = s.value("leo_counts", cfg.scale_leo_counts);
    cfg.scale_train_episodes =
        s.value("train_episodes", cfg.scale_train_episodes);
    cfg.scale_scenarios = s.value("scenarios", cfg.scale_scenarios);
  }
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.checkpoint = j.value("checkpoint", cfg.checkpoint);
  if (cfg.num_leo < 1 || cfg.num_meo < 1 || cfg.scenario_count < 1) {
    throw std::invalid_argument("counts must be positive");
  }
  if (cfg.init_policy != "random" && cfg.init_policy != "nearest") {
    throw std::invalid_argument("init must be 'random' or 'nearest'");
  }
  return cfg;
}

ExperimentConfig config_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  json j;
  j["schema"] = cfg.schema;
  j["constellation"] = {{"num_leo", cfg.num_leo},
                        {"num_meo", cfg.num_meo},
                        {"leo_shell", shell_to_json(effective_leo_shell(cfg))},
                        {"meo_shell", shell_to_json(effective_meo_shell(cfg))}};
  j["slot"] = cfg.slot;
  j["slot_duration_s"] = cfg.slot_duration_s;
  j["traffic"] = {{"n_flows", cfg.n_flows},
                  {"volume_scale", cfg.volume_scale},
                  {"sync_unit", cfg.sync_unit}};
  j["eval"] = eval_to_json(cfg.eval);
  j["scenarios"] = {{"count", cfg.scenario_count},
                    {"seed", cfg.scenario_seed},
                    {"init", cfg.init_policy}};
  j["out_dir"] = cfg.out_dir;
  return j.dump(2);
}

ShellConfig shell_for_count(int n, double altitude_km, double inclination_deg,
                            double phase_offset) {
  if (n < 1) throw std::invalid_argument("satellite count must be positive");
  int best_planes = 1;
  double target = std::sqrt(static_cast<double>(n));
  double best_gap = std::abs(1.0 - target);
  for (int p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    double gap = std::abs(static_cast<double>(p) - target);
    if (gap < best_gap) {
      best_gap = gap;
      best_planes = p;
    }
  }
  ShellConfig s;
  s.altitude_km = altitude_km;
  s.inclination_deg = inclination_deg;
  s.num_planes = best_planes;
  s.sats_per_plane = n / best_planes;
  s.phase_offset = phase_offset;
  return s;
}

ShellConfig effective_leo_shell(const ExperimentConfig& cfg) {
  if (cfg.leo_shell) return *cfg.leo_shell;
  return shell_for_count(cfg.num_leo, 550.0, 53.0);
}

ShellConfig effective_meo_shell(const ExperimentConfig& cfg) {
  if (cfg.meo_shell) return *cfg.meo_shell;
  return shell_for_count(cfg.num_meo, 8000.0, 55.0);
}

std::vector<ScenarioBase> make_scenario_bases(const ExperimentConfig& cfg,
                                              int count) {
  Constellation constellation(effective_leo_shell(cfg),
                              effective_meo_shell(cfg));
  std::vector<ScenarioBase> bases;
  bases.reserve(count);
  for (int k = 0; k < count; ++k) {
    ScenarioBase base;
    base.id = k;
    base.snapshot = std::make_shared<const Snapshot>(
        constellation.propagate(cfg.slot + k, cfg.slot_duration_s));
    base.traffic =
        generate_traffic(*base.snapshot, cfg.n_flows, cfg.volume_scale,
                         split_seed(cfg.scenario_seed, k), cfg.sync_unit);
    bases.push_back(std::move(base));
  }
  return bases;
}

std::shared_ptr<const Scenario> make_eval_scenario(const ExperimentConfig& cfg,
                                                   const ScenarioBase& base,
                                                   int index) {
  Allocation init;
  if (cfg.init_policy == "nearest") {
    init = nearest_meo_allocation(*base.snapshot);
  } else {
    Rng rng(split_seed(cfg.scenario_seed, 5000 + index));
    init = uniform_random_allocation(*base.snapshot, rng);
  }
  return std::make_shared<const Scenario>(make_scenario(
      base.id, base.snapshot, base.traffic, std::move(init), cfg.eval));
}

TrainingArtifacts run_training(const ExperimentConfig& cfg) {
  std::vector<ScenarioBase> pool =
      make_scenario_bases(cfg, cfg.scenario_count);
  TrainResult result = train(pool, cfg.eval, cfg.train);

  TrainingArtifacts art;
  art.log = std::move(result.log);
  std::vector<double> finals;
  finals.reserve(art.log.size());
  for (const EpisodeMetric& m : art.log) finals.push_back(m.final_score);
  art.smoothed_score = moving_average(finals, 100);

  std::filesystem::path dir(cfg.out_dir);
  art.metrics_csv = dir / "training_metrics.csv";
  std::ofstream out = open_out(art.metrics_csv);
  out << "episode,scenario_id,final_score,reward_sum,policy_loss,value_loss,"
         "entropy,smoothed_score\n";
  for (std::size_t i = 0; i < art.log.size(); ++i) {
    const EpisodeMetric& m = art.log[i];
    out << m.episode << "," << m.scenario_id << "," << fmt(m.final_score)
        << "," << fmt(m.reward_sum) << "," << fmt(m.policy_loss) << ","
        << fmt(m.value_loss) << "," << fmt(m.entropy) << ","
        << fmt(art.smoothed_score[i]) << "\n";
  }
  out.close();

  art.checkpoint = dir / "policy.json";
  std::ofstream ck = open_out(art.checkpoint);
  save_policy(ck, *result.net, cfg.train, result.adam.get());
  return art;
}

SolverResult solve_with_method(const std::string& method,
                               const ExperimentConfig& cfg,
                               const std::shared_ptr<const Scenario>& scenario,
                               std::uint64_t seed, const PolicyNet* policy) {
  if (method == "brute") {
    return brute_force(*scenario);
  }
  if (method == "greedy") {
    return greedy_hill_climb(*scenario, cfg.greedy_max_iters);
  }
  if (method == "ga" || method == "ga_kmeans") {
    GAConfig ga = cfg.ga;
    ga.seed = seed;
    Allocation start = method == "ga_kmeans"
                           ? kmeans_seed(*scenario->snapshot,
                                         scenario->num_meo(), seed)
                           : scenario->initial_allocation;
    return ga_refine(*scenario, start, ga);
  }
  if (method == "random") {
    return random_search(*scenario, cfg.random_samples, seed);
  }
  if (method == "policy") {
    if (policy == nullptr) {
      throw std::invalid_argument("policy method requires a checkpoint");
    }
    EnvConfig env_cfg;
    env_cfg.max_steps = cfg.train.max_steps;
    env_cfg.max_moves_per_step = cfg.train.k_moves;
    env_cfg.gamma = cfg.train.gamma;
    env_cfg.move_penalty = cfg.train.move_penalty;
    InferResult inf = infer(*policy, scenario, cfg.train.max_steps, env_cfg);
    SolverResult r;
    r.allocation = std::move(inf.best_allocation);
    r.eval = std::move(inf.best_eval);
    r.wall_clock_s = inf.wall_clock_s;
    r.evaluations = static_cast<long>(inf.score_trace.size());
    return r;
  }
  throw std::invalid_argument("unknown solver method: " + method);
}

std::vector<AlphaRow> sweep_alpha(const ExperimentConfig& cfg,
                                  const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  for (double a : alphas) {
    if (a < 0.0 || a > 1.0) {
      throw std::invalid_argument("alpha out of [0,1]");
    }
  }
  std::vector<ScenarioBase> bases =
      make_scenario_bases(cfg, cfg.scenario_count);
  std::vector<AlphaRow> rows;
  for (double alpha : alphas) {
    ExperimentConfig acfg = cfg;
    acfg.eval.alpha = alpha;
    std::vector<double> term_o, term_d, scores;
    for (int k = 0; k < cfg.scenario_count; ++k) {
      auto scenario = make_eval_scenario(acfg, bases[k], k);
      SolverResult res =
          solve_with_method(cfg.sweep_solver, acfg, scenario,
                            split_seed(cfg.scenario_seed, 9000 + k), nullptr);
      term_o.push_back(res.eval.term_o);
      term_d.push_back(res.eval.term_d);
      scores.push_back(res.eval.score);
    }
    AlphaRow row;
    row.alpha = alpha;
    row.mean_term_o = mean_of(term_o);
    row.std_term_o = stddev_of(term_o);
    row.mean_term_d = mean_of(term_d);
    row.std_term_d = stddev_of(term_d);
    row.mean_score = mean_of(scores);
    row.std_score = stddev_of(scores);
    row.scenarios = cfg.scenario_count;
    rows.push_back(row);
  }
  return rows;
}

void write_alpha_csv(const std::filesystem::path& path,
                     const std::vector<AlphaRow>& rows) {
  std::ofstream out = open_out(path);
  out << "alpha,mean_term_o,std_term_o,mean_term_d,std_term_d,mean_score,"
         "std_score,scenarios\n";
  for (const AlphaRow& r : rows) {
    out << fmt(r.alpha) << "," << fmt(r.mean_term_o) << ","
        << fmt(r.std_term_o) << "," << fmt(r.mean_term_d) << ","
        << fmt(r.std_term_d) << "," << fmt(r.mean_score) << ","
        << fmt(r.std_score) << "," << r.scenarios << "\n";
  }
}

ScaleSweep sweep_scale(const ExperimentConfig& cfg,
                       const std::vector<int>& leo_counts) {
  if (leo_counts.empty()) throw std::invalid_argument("empty size list");
  ScaleSweep sweep;
  std::vector<double> sizes, times;
  for (int n : leo_counts) {
    ExperimentConfig scfg = cfg;
    scfg.num_leo = n;
    scfg.leo_shell.reset();
    scfg.scenario_count = cfg.scale_scenarios;
    scfg.train.max_episodes = cfg.scale_train_episodes;
    // Keep flow volume per LEO roughly constant across sizes.
    scfg.n_flows = cfg.n_flows * n / std::max(1, cfg.num_leo);

    std::vector<ScenarioBase> bases =
        make_scenario_bases(scfg, scfg.scenario_count);
    TrainResult trained = train(bases, scfg.eval, scfg.train);

    ScaleRow row;
    row.num_leo = n;
    row.scenarios = scfg.scenario_count;
    std::vector<double> scores, infer_s;
    EnvConfig env_cfg;
    env_cfg.max_steps = scfg.train.max_steps;
    env_cfg.max_moves_per_step = scfg.train.k_moves;
    env_cfg.gamma = scfg.train.gamma;
    env_cfg.move_penalty = scfg.train.move_penalty;
    for (int k = 0; k < scfg.scenario_count; ++k) {
      auto scenario = make_eval_scenario(scfg, bases[k], k);
      InferResult inf =
          infer(*trained.net, scenario, scfg.train.max_steps, env_cfg);
      scores.push_back(inf.best_eval.score);
      infer_s.push_back(inf.wall_clock_s);
      if (k == 0) {
        auto t0 = std::chrono::steady_clock::now();
        (void)evaluate(*scenario->snapshot, scenario->initial_allocation,
                       scenario->traffic, scenario->eval_params);
        row.eval_call_s = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
      }
    }
    row.mean_score = mean_of(scores);
    row.mean_infer_s = mean_of(infer_s);
    row.std_infer_s = stddev_of(infer_s);
    sweep.rows.push_back(row);
    sizes.push_back(static_cast<double>(n));
    times.push_back(row.mean_infer_s);
  }
  sweep.slope = loglog_slope(sizes, times);
  return sweep;
}

void write_scale_json(const std::filesystem::path& path, const ScaleSweep& s) {
  json j;
  j["schema"] = 1;
  json rows = json::array();
  for (const ScaleRow& r : s.rows) {
    rows.push_back({{"num_leo", r.num_leo},
                    {"mean_score", r.mean_score},
                    {"mean_infer_s", r.mean_infer_s},
                    {"std_infer_s", r.std_infer_s},
                    {"eval_call_s", r.eval_call_s},
                    {"scenarios", r.scenarios}});
  }
  j["rows"] = std::move(rows);
  if (s.slope) {
    j["slope_log_time_vs_log_n"] = *s.slope;
  } else {
    j["slope_log_time_vs_log_n"] = nullptr;
  }
  std::ofstream out = open_out(path);
  out << j.dump(2);
}

ComparisonTable compare_algorithms(const ExperimentConfig& cfg,
                                   const std::vector<std::string>& methods) {
  std::vector<ScenarioBase> bases =
      make_scenario_bases(cfg, cfg.scenario_count);
  std::vector<std::shared_ptr<const Scenario>> scenarios;
  for (int k = 0; k < cfg.scenario_count; ++k) {
    scenarios.push_back(make_eval_scenario(cfg, bases[k], k));
  }
  std::shared_ptr<PolicyNet> policy;
  for (const std::string& m : methods) {
    if (m == "policy") {
      if (cfg.checkpoint.empty()) {
        throw std::invalid_argument(
            "policy method requires config.checkpoint");
      }
      std::ifstream in(cfg.checkpoint);
      if (!in) {
        throw std::invalid_argument("cannot read checkpoint " + cfg.checkpoint);
      }
      policy = load_policy(in).net;
    }
  }

  ComparisonTable table;
  std::ostringstream desc;
  desc << "leo=" << cfg.num_leo << " meo=" << cfg.num_meo
       << " scenarios=" << cfg.scenario_count << " slot0=" << cfg.slot;
  table.instance = desc.str();
  table.seed = cfg.scenario_seed;
  for (const std::string& method : methods) {
    std::vector<double> scores, walls, evals;
    for (int k = 0; k < cfg.scenario_count; ++k) {
      SolverResult res =
          solve_with_method(method, cfg, scenarios[k],
                            split_seed(cfg.scenario_seed, 9000 + k),
                            policy.get());
      scores.push_back(res.eval.score);
      walls.push_back(res.wall_clock_s);
      evals.push_back(static_cast<double>(res.evaluations));
    }
    ComparisonRow row;
    row.method = method;
    row.mean_score = mean_of(scores);
    row.std_score = stddev_of(scores);
    row.mean_wall_clock_s = mean_of(walls);
    row.std_wall_clock_s = stddev_of(walls);
    row.mean_evaluations = mean_of(evals);
    row.scenarios = cfg.scenario_count;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string comparison_to_json(const ComparisonTable& table) {
  json j;
  j["schema"] = 1;
  j["instance"] = table.instance;
  j["seed"] = table.seed;
  json rows = json::array();
  for (const ComparisonRow& r : table.rows) {
    rows.push_back({{"method", r.method},
                    {"mean_score", r.mean_score},
                    {"std_score", r.std_score},
                    {"mean_wall_clock_s", r.mean_wall_clock_s},
                    {"std_wall_clock_s", r.std_wall_clock_s},
                    {"mean_evaluations", r.mean_evaluations},
                    {"scenarios", r.scenarios}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

void write_scenario_files(const ExperimentConfig& cfg,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<ScenarioBase> bases =
      make_scenario_bases(cfg, cfg.scenario_count);
  for (int k = 0; k < cfg.scenario_count; ++k) {
    auto scenario = make_eval_scenario(cfg, bases[k], k);
    std::string traffic_name = "scenario_" + std::to_string(k) + "_traffic.csv";
    std::ofstream tcsv = open_out(dir / traffic_name);
    write_traffic_csv(tcsv, scenario->traffic);
    tcsv.close();

    json j;
    j["schema"] = 1;
    j["id"] = k;
    j["constellation"] = {
        {"leo_shell", shell_to_json(effective_leo_shell(cfg))},
        {"meo_shell", shell_to_json(effective_meo_shell(cfg))}};
    j["slot"] = cfg.slot + k;
    j["slot_duration_s"] = cfg.slot_duration_s;
    j["traffic_csv"] = traffic_name;
    j["sync_unit"] = cfg.sync_unit;
    j["eval_params"] = eval_to_json(cfg.eval);
    j["allocation"] = {
        {"controller_of", scenario->initial_allocation.controller_of},
        {"senior", scenario->initial_allocation.senior}};
    std::ofstream out = open_out(dir / ("scenario_" + std::to_string(k) + ".json"));
    out << j.dump(2);
  }
}

std::shared_ptr<const Scenario> load_scenario_file(
    const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) {
    throw std::invalid_argument("cannot read scenario " + json_path.string());
  }
  json j = json::parse(in);
  if (j.at("schema").get<int>() != 1) {
    throw std::invalid_argument("unsupported scenario schema");
  }
  ShellConfig leo = shell_from_json(j.at("constellation").at("leo_shell"),
                                    ShellConfig{});
  ShellConfig meo = shell_from_json(j.at("constellation").at("meo_shell"),
                                    ShellConfig{});
  Constellation constellation(leo, meo);
  auto snapshot = std::make_shared<const Snapshot>(constellation.propagate(
      j.at("slot").get<long>(), j.at("slot_duration_s").get<double>()));

  std::filesystem::path traffic_path =
      json_path.parent_path() / j.at("traffic_csv").get<std::string>();
  std::ifstream tin(traffic_path);
  if (!tin) {
    throw std::invalid_argument("cannot read traffic " + traffic_path.string());
  }
  TrafficScenario traffic = read_traffic_csv(tin, snapshot->num_leo,
                                             j.value("sync_unit", 1.0));

  EvalParams params = eval_from_json(j.at("eval_params"), EvalParams{});
  Allocation alloc;
  alloc.controller_of =
      j.at("allocation").at("controller_of").get<std::vector<int>>();
  alloc.senior = j.at("allocation").at("senior").get<int>();
  return std::make_shared<const Scenario>(
      make_scenario(j.at("id").get<int>(), snapshot, std::move(traffic),
                    std::move(alloc), params));
}

Allocation load_allocation_file(const std::filesystem::path& path,
                                int num_leo, int num_meo) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read allocation " + path.string());
  }
  json j = json::parse(in);
  Allocation alloc;
  alloc.controller_of = j.at("controller_of").get<std::vector<int>>();
  alloc.senior = j.at("senior").get<int>();
  if (static_cast<int>(alloc.controller_of.size()) != num_leo) {
    throw std::invalid_argument("allocation size mismatch");
  }
  for (int c : alloc.controller_of) {
    if (c < 0 || c >= num_meo) {
      throw std::invalid_argument("allocation controller out of range");
    }
  }
  return alloc;
}

}  // namespace satprov
