// Command-line front end: generate, optimize, experiment, oracle.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uavris/config.hpp"
#include "uavris/harness.hpp"
#include "uavris/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace uavris;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> mode;
  std::optional<int> trials;
  std::string scenario_path;
  double resolution = 1.0;
};

ExperimentConfig resolve_config(const Options& opt) {
  ExperimentConfig cfg = opt.config_path.empty() ? ExperimentConfig{} : load_config(opt.config_path);
  if (opt.seed) cfg.base_seed = *opt.seed;
  if (opt.out) cfg.out_dir = *opt.out;
  if (opt.mode) cfg.mode = parse_mode(*opt.mode);
  if (opt.trials) cfg.trials = *opt.trials;
  cfg.validate();
  return cfg;
}

Scenario scenario_for(const ExperimentConfig& cfg, const Options& opt) {
  if (!opt.scenario_path.empty()) return load_scenario(opt.scenario_path);
  return generate_scenario(cfg.generation, cfg.base_seed, cfg.radio);
}

std::string xy(const Position3& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.4f, %.4f, %.2f)", p.x(), p.y(), p.z());
  return buf;
}

int cmd_generate(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const Scenario scn = generate_scenario(cfg.generation, cfg.base_seed, cfg.radio);
  if (opt.out) {
    fs::create_directories(*opt.out);
    const fs::path path = fs::path(*opt.out) / "scenario.json";
    save_scenario(scn, path);
    std::cout << path.string() << '\n';
  } else {
    std::cout << scenario_to_json(scn) << '\n';
  }
  return 0;
}

int cmd_optimize(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const Scenario scn = scenario_for(cfg, opt);
  const ChannelModel model(scn, cfg.mode, cfg.base_seed);
  const TrialResult trial = evaluate_trial(model, optimize_d2d(scn, model, cfg.optimizer),
                                           optimize_cu(scn, model, cfg.optimizer), cfg.search, cfg.base_seed, {});
  std::cout << "r_D = " << xy(trial.d2d.position) << "  iters=" << trial.d2d.iterations
            << " stop=" << to_string(trial.d2d.stop_reason) << '\n';
  std::cout << "r_C = " << xy(trial.cu.position) << "  iters=" << trial.cu.iterations
            << " stop=" << to_string(trial.cu.stop_reason) << '\n';
  std::cout << "s   = " << xy(trial.joint.position) << "  T=" << trial.joint.objective
            << " probes=" << trial.joint.iterations << '\n';
  std::cout << "phi = " << trial.phi << '\n';
  std::cout << rate_report_csv_header() << '\n';
  for (const auto& row : trial.rows) {
    std::cout << rate_report_csv_row(row.report, cfg.base_seed, to_string(row.scheme), scn, row.position) << '\n';
  }
  return 0;
}

int cmd_experiment(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const auto result = run_experiment(cfg);
  std::cout << summary_csv(result.summary);
  std::cout << "wrote " << result.rows.size() << " rows to " << cfg.out_dir << '\n';
  return 0;
}

int cmd_oracle(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const Scenario scn = scenario_for(cfg, opt);
  const ChannelModel model(scn, cfg.mode, cfg.base_seed);
  const Bounds bounds = cfg.optimizer.bounds.value_or(Bounds::of(scn.region));

  auto report = [&](const char* name, const PlacementResult& ascent, const ObjectiveFn& objective) {
    const GridOptimum grid = grid_oracle(objective, bounds, scn.uav_height, opt.resolution);
    const double gap = (grid.value - ascent.objective) / std::abs(grid.value);
    std::printf("%s ascent %s -> %.6f | grid %s -> %.6f | relative gap %.3e\n", name, xy(ascent.position).c_str(),
                ascent.objective, xy(grid.position).c_str(), grid.value, gap);
  };
  if (scn.num_pairs() > 0) {
    report("D2D", optimize_d2d(scn, model, cfg.optimizer),
           [&](const Position3& r) { return total_d2d(r, model.state_at(r), scn); });
  }
  if (scn.num_cus() > 0) {
    report("CU ", optimize_cu(scn, model, cfg.optimizer),
           [&](const Position3& r) { return total_cu(r, model.state_at(r), scn); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-mounted UAV placement toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment config file");
    sub->add_option("--seed", opt.seed, "scenario / base seed");
    sub->add_option("--mode", opt.mode, "channel mode: expected | sampled");
  };

  auto* generate = app.add_subcommand("generate", "emit a scenario as JSON");
  add_common(generate);
  generate->add_option("--out", opt.out, "directory for scenario.json (stdout if omitted)");

  auto* optimize = app.add_subcommand("optimize", "run one trial and print positions and rates");
  add_common(optimize);
  optimize->add_option("--scenario", opt.scenario_path, "scenario JSON instead of generating one");

  auto* experiment = app.add_subcommand("experiment", "run the configured sweep and write CSVs");
  add_common(experiment);
  experiment->add_option("--out", opt.out, "output directory");
  experiment->add_option("--trials", opt.trials, "trials per sweep point");

  auto* oracle = app.add_subcommand("oracle", "cross-check the ascent optimizers against a grid search");
  add_common(oracle);
  oracle->add_option("--scenario", opt.scenario_path, "scenario JSON instead of generating one");
  oracle->add_option("--resolution", opt.resolution, "grid spacing in meters")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*generate) return cmd_generate(opt);
    if (*optimize) return cmd_optimize(opt);
    if (*experiment) return cmd_experiment(opt);
    if (*oracle) return cmd_oracle(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
