#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "uavris/config.hpp"
#include "uavris/harness.hpp"
#include "uavris/scenario_io.hpp"

using namespace uavris;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.generation.num_pairs = 6;
  cfg.generation.num_cus = 4;
  cfg.generation.num_obstacles = 10;
  cfg.optimizer.max_iters = 200;
  cfg.search.num_directions = 36;
  cfg.search.max_steps = 100;
  cfg.trials = 2;
  return cfg;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("uavris_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config defaults") {
  const ExperimentConfig cfg;
  CHECK(cfg.generation.num_pairs == 80);
  CHECK(cfg.generation.num_cus == 30);
  CHECK(cfg.generation.num_obstacles == 45);
  CHECK(cfg.radio.ris_elements == 250);
  CHECK(cfg.radio.noise_dbm == -100.0);
  CHECK(cfg.optimizer.learning_rate == 0.1);
  CHECK(cfg.optimizer.tolerance == 1e-4);
  CHECK(cfg.search.num_directions == 360);
  CHECK(cfg.trials == 20);
  CHECK_NOTHROW(cfg.validate());
  CHECK(parse_config("") == cfg);
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(R"(
# comment line
trials = 3
mode = sampled

[generation]
num_pairs = 12   # trailing comment
region.x_hi = 200

[radio]
ris_elements = 100
pl_nlos.beta = 3.1

[optimizer]
r_min = 10, 20
r_max = 190, 180

[sweeps]
obstacles = 0, 15, 30
)");
  CHECK(cfg.trials == 3);
  CHECK(cfg.mode == ChannelMode::Sampled);
  CHECK(cfg.generation.num_pairs == 12);
  CHECK(cfg.generation.region.x_hi == 200);
  CHECK(cfg.radio.ris_elements == 100);
  CHECK(cfg.radio.pl_nlos.beta == 3.1);
  REQUIRE(cfg.optimizer.bounds.has_value());
  CHECK(cfg.optimizer.bounds->lo == Vector2(10, 20));
  CHECK(cfg.optimizer.bounds->hi == Vector2(190, 180));
  CHECK(cfg.sweeps.obstacles == std::vector<double>{0, 15, 30});
  CHECK(parse_config("radio.ris_elements = 64").radio.ris_elements == 64);
}

TEST_CASE("config round trip") {
  ExperimentConfig cfg = tiny_config();
  cfg.mode = ChannelMode::Sampled;
  cfg.radio.rician_k = 0.1 + 0.2;
  cfg.sweeps.rician_k = {0, 2.5, 10};
  cfg.search.bounds = Bounds{{1, 2}, {3, 4}};
  CHECK(parse_config(to_config_text(cfg)) == cfg);
}

TEST_CASE("config errors") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("trials = 2\nbogus_key = 1").find("line 2") != std::string::npos);
  CHECK(message("[generation]\nnum_pairs = many").find("line 2") != std::string::npos);
  CHECK(message("optimizer.learning_rate = -0.1").find("learning_rate") != std::string::npos);
  CHECK(message("mode = psychic").find("mode") != std::string::npos);
  CHECK_FALSE(message("generation.num_pairs = -1").empty());
  CHECK_FALSE(message("radio.ris_elements = 0").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/uavris.cfg"), ConfigError);
}

TEST_CASE("scenario JSON round trip") {
  GenerationConfig gen;
  gen.num_pairs = 5;
  gen.num_cus = 3;
  gen.num_obstacles = 4;
  RadioConfig radio;
  radio.rician_k = 7.25;
  const Scenario scn = generate_scenario(gen, 12, radio);
  CHECK(scenario_from_json(scenario_to_json(scn)) == scn);
  CHECK(scenario_from_json(scenario_to_json(scn, -1)) == scn);

  const fs::path dir = scratch_dir("json");
  fs::create_directories(dir);
  save_scenario(scn, dir / "s.json");
  CHECK(load_scenario(dir / "s.json") == scn);
  fs::remove_all(dir);

  CHECK_THROWS_AS(scenario_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(scenario_from_json("{}"), std::invalid_argument);
  std::string broken = scenario_to_json(scn);
  broken.replace(broken.find("\"uav_height\": 25.0"), 18, "\"uav_height\": -1.0");
  CHECK_THROWS_AS(scenario_from_json(broken), std::invalid_argument);
}

TEST_CASE("sweep points") {
  ExperimentConfig cfg;
  CHECK(sweep_points(cfg).size() == 1);
  CHECK(sweep_points(cfg)[0].param == "none");
  cfg.sweeps.obstacles = {0, 30};
  cfg.sweeps.rician_k = {1};
  const auto pts = sweep_points(cfg);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].param == "obstacles");
  CHECK(pts[2].param == "rician_k");
  CHECK(apply_sweep(cfg, pts[1]).generation.num_obstacles == 30);
  CHECK(apply_sweep(cfg, pts[2]).radio.rician_k == 1.0);
  CHECK_THROWS_AS(apply_sweep(cfg, {"height", 1}), std::invalid_argument);
}

TEST_CASE("run_trial rows") {
  const ExperimentConfig cfg = tiny_config();
  const TrialResult t = run_trial(cfg, 5, {});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].scheme == Scheme::JointOpt);
  CHECK(t.rows[1].scheme == Scheme::D2DOnlyPlacement);
  CHECK(t.rows[2].scheme == Scheme::CUOnlyPlacement);
  CHECK(t.rows[0].t_value <= t.rows[1].t_value);
  for (const auto& row : t.rows) {
    CHECK(row.jain > 0.0);
    CHECK(row.jain <= 1.0);
    CHECK(row.report.per_pair_rates.size() == 6);
    CHECK(row.report.per_cu_rates.size() == 4);
  }
  CHECK(t.rows[1].position == t.d2d.position);
  CHECK(t.rows[1].report.d2d_total == t.d2d.objective);
  CHECK(t.rows[2].report.cu_total == t.cu.objective);

  ExperimentConfig empty = cfg;
  empty.generation.num_pairs = 0;
  CHECK_THROWS_AS(run_trial(empty, 1, {}), std::invalid_argument);
}

TEST_CASE("identical single-population optima make the joint search a no-op") {
  const ExperimentConfig cfg = tiny_config();
  const Scenario scn = generate_scenario(cfg.generation, 4, cfg.radio);
  const ChannelModel model(scn, ChannelMode::Expected, 4);
  const PlacementResult d = optimize_d2d(scn, model, cfg.optimizer);
  PlacementResult c = d;
  const TrialResult t = evaluate_trial(model, d, c, cfg.search, 4, {});
  CHECK(t.joint.position == d.position);
  CHECK(t.rows[0].report.net == t.rows[1].report.net);
}

TEST_CASE("sweeps are reproducible and summaries match rows") {
  ExperimentConfig cfg = tiny_config();
  cfg.sweeps.obstacles = {0, 20};
  const ExperimentResult a = run_sweeps(cfg, 1);
  const ExperimentResult b = run_sweeps(cfg, 3);
  CHECK(a.rows.size() == 2 * 2 * 3);
  CHECK(rows_csv(a.rows) == rows_csv(b.rows));
  CHECK(summary_csv(a.summary) == summary_csv(b.summary));
  REQUIRE(a.summary.size() == 6);

  for (const auto& s : a.summary) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : a.rows) {
      if (r.sweep.param == s.sweep.param && r.sweep.value == s.sweep.value && r.scheme == s.scheme) {
        sum += r.report.net;
        ++count;
      }
    }
    CHECK(count == s.trials);
    CHECK(s.net.mean == doctest::Approx(sum / count).epsilon(1e-12));
  }
  CHECK(rows_csv(a.rows).rfind(kRowsHeader, 0) == 0);
}

TEST_CASE("experiment output files") {
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 1;
  cfg.out_dir = scratch_dir("exp").string();
  const ExperimentResult res = run_experiment(cfg, 1);
  const fs::path out = cfg.out_dir;
  CHECK(read_file(out / "rows.csv") == rows_csv(res.rows));
  CHECK(read_file(out / "summary.csv") == summary_csv(res.summary));
  CHECK(fs::exists(out / "traces" / "none_0_seed1_d2d.csv"));
  CHECK(fs::exists(out / "traces" / "none_0_seed1_joint.csv"));
  const std::string trace = read_file(out / "traces" / "none_0_seed1_cu.csv");
  CHECK(trace.rfind("iter,x,y,objective\n0,", 0) == 0);
  fs::remove_all(out);
}

TEST_CASE("failed write leaves no partial output") {
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 1;
  const ExperimentResult res = run_sweeps(cfg, 1);
  const fs::path dir = scratch_dir("partial");
  fs::create_directories(dir / "traces" / "none_0_seed1_cu.csv");  // a directory where a file must go
  CHECK_THROWS(write_experiment(res, dir));
  CHECK_FALSE(fs::exists(dir / "rows.csv"));
  CHECK_FALSE(fs::exists(dir / "summary.csv"));
  CHECK_FALSE(fs::exists(dir / "traces" / "none_0_seed1_d2d.csv"));
  fs::remove_all(dir);
}
