// Command line front end: scenario generation, training, single-allocation
// scoring, the algorithm comparison, and the alpha/scale sweeps.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "satprov/bench.hpp"

namespace {

using satprov::ExperimentConfig;

ExperimentConfig resolve_config(const std::string& config_path,
                                std::uint64_t seed, bool seed_set,
                                const std::string& out_dir) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = satprov::config_from_json_file(config_path);
  }
  if (seed_set) {
    cfg.scenario_seed = seed;
    cfg.train.seed = seed;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical LEO/MEO controller provisioning toolkit"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "experiment config JSON");
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--seed", seed, "seed override for scenarios and training")
      ->each([&](const std::string&) { seed_set = true; });

  CLI::App* cmd_generate =
      app.add_subcommand("generate", "write scenario files");
  CLI::App* cmd_train = app.add_subcommand("train", "train the policy");
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "score one allocation on a scenario file");
  std::string scenario_path, allocation_path;
  cmd_eval->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  cmd_eval->add_option("--allocation", allocation_path,
                       "allocation JSON file (defaults to the scenario's)");
  CLI::App* cmd_compare =
      app.add_subcommand("compare", "run the solver comparison table");
  CLI::App* cmd_alpha =
      app.add_subcommand("sweep-alpha", "objective-weight sweep");
  CLI::App* cmd_scale =
      app.add_subcommand("sweep-scale", "constellation-size sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    ExperimentConfig cfg = resolve_config(config_path, seed, seed_set, out_dir);
    std::filesystem::path out(cfg.out_dir);

    if (cmd_generate->parsed()) {
      satprov::write_scenario_files(cfg, out);
      std::cout << "wrote " << cfg.scenario_count << " scenario files to "
                << out.string() << "\n";
    } else if (cmd_train->parsed()) {
      satprov::TrainingArtifacts art = satprov::run_training(cfg);
      std::cout << "metrics: " << art.metrics_csv.string() << "\n"
                << "checkpoint: " << art.checkpoint.string() << "\n";
    } else if (cmd_eval->parsed()) {
      auto scenario = satprov::load_scenario_file(scenario_path);
      satprov::Allocation alloc = scenario->initial_allocation;
      if (!allocation_path.empty()) {
        alloc = satprov::load_allocation_file(
            allocation_path, scenario->num_leo(), scenario->num_meo());
      }
      satprov::EvalResult r =
          satprov::evaluate(*scenario->snapshot, alloc, scenario->traffic,
                            scenario->eval_params, &scenario->baseline);
      std::cout << satprov::eval_result_to_json(r) << "\n";
    } else if (cmd_compare->parsed()) {
      satprov::ComparisonTable table =
          satprov::compare_algorithms(cfg, cfg.compare_methods);
      std::filesystem::create_directories(out);
      std::ofstream f(out / "compare.json");
      if (!f) throw std::runtime_error("cannot write compare.json");
      f << satprov::comparison_to_json(table);
      std::cout << satprov::comparison_to_json(table) << "\n";
    } else if (cmd_alpha->parsed()) {
      auto rows = satprov::sweep_alpha(cfg, cfg.alphas);
      satprov::write_alpha_csv(out / "sweep_alpha.csv", rows);
      std::cout << "wrote " << (out / "sweep_alpha.csv").string() << "\n";
    } else if (cmd_scale->parsed()) {
      satprov::ScaleSweep sweep =
          satprov::sweep_scale(cfg, cfg.scale_leo_counts);
      satprov::write_scale_json(out / "sweep_scale.json", sweep);
      std::cout << "wrote " << (out / "sweep_scale.json").string() << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
