#include "uavris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <thread>
#include <tuple>

#include "format.hpp"

namespace uavris {

namespace fs = std::filesystem;

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::JointOpt: return "JointOpt";
    case Scheme::D2DOnlyPlacement: return "D2DOnlyPlacement";
    case Scheme::CUOnlyPlacement: return "CUOnlyPlacement";
  }
  return "Unknown";
}

ExperimentConfig apply_sweep(const ExperimentConfig& cfg, const SweepPoint& point) {
  ExperimentConfig out = cfg;
  if (point.param == "obstacles") {
    out.generation.num_obstacles = static_cast<int>(point.value);
  } else if (point.param == "rician_k") {
    out.radio.rician_k = point.value;
  } else if (point.param != "none") {
    throw std::invalid_argument("unknown sweep parameter '" + point.param + "'");
  }
  return out;
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg) {
  std::vector<SweepPoint> points;
  for (double v : cfg.sweeps.obstacles) points.push_back({"obstacles", v});
  for (double v : cfg.sweeps.rician_k) points.push_back({"rician_k", v});
  if (points.empty()) points.push_back({});
  return points;
}

TrialResult evaluate_trial(const ChannelModel& model, PlacementResult d2d, PlacementResult cu,
                           const SearchConfig& search, std::uint64_t seed, const SweepPoint& sweep) {
  TrialResult trial;
  trial.seed = seed;
  trial.sweep = sweep;
  trial.phi = target_ratio(d2d.report, cu.report);
  trial.joint = joint_search(d2d.position, cu.position, trial.phi, search, model);
  trial.d2d = std::move(d2d);
  trial.cu = std::move(cu);

  auto row_for = [&](Scheme scheme, const PlacementResult& placement, double t_value) {
    SchemeRow row;
    row.seed = seed;
    row.sweep = sweep;
    row.scheme = scheme;
    row.position = placement.position;
    row.report = placement.report;
    const auto rates = row.report.all_rates();
    row.jain = jain_index(rates);
    row.jain_all_zero = jain_all_zero(rates);
    row.t_value = t_value;
    row.iters = placement.iterations;
    row.stop_reason = placement.stop_reason;
    return row;
  };
  trial.rows[0] = row_for(Scheme::JointOpt, trial.joint, trial.joint.objective);
  trial.rows[1] =
      row_for(Scheme::D2DOnlyPlacement, trial.d2d, ratio_deviation(trial.d2d.position, trial.phi, model));
  trial.rows[2] = row_for(Scheme::CUOnlyPlacement, trial.cu, ratio_deviation(trial.cu.position, trial.phi, model));
  return trial;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed, const SweepPoint& sweep) {
  const ExperimentConfig point_cfg = apply_sweep(cfg, sweep);
  const Scenario scn = generate_scenario(point_cfg.generation, seed, point_cfg.radio);
  const ChannelModel model(scn, point_cfg.mode, seed);
  PlacementResult d2d = optimize_d2d(scn, model, point_cfg.optimizer);
  PlacementResult cu = optimize_cu(scn, model, point_cfg.optimizer);
  return evaluate_trial(model, std::move(d2d), std::move(cu), point_cfg.search, seed, sweep);
}

namespace {

Stat stat_of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

std::string sweep_value_text(const SweepPoint& p) { return fmt_double(p.value); }

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<SchemeRow>& rows) {
  // Group by sweep point in first-appearance order, then by scheme.
  std::vector<std::pair<std::string, double>> order;
  std::map<std::tuple<std::string, double, int>, std::vector<const SchemeRow*>> groups;
  for (const auto& row : rows) {
    const std::pair<std::string, double> key{row.sweep.param, row.sweep.value};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    groups[{row.sweep.param, row.sweep.value, static_cast<int>(row.scheme)}].push_back(&row);
  }
  std::vector<SummaryRow> out;
  for (const auto& [param, value] : order) {
    for (Scheme scheme : kSchemes) {
      const auto it = groups.find({param, value, static_cast<int>(scheme)});
      if (it == groups.end()) continue;
      std::vector<double> net, d2d, cu, jain, t;
      for (const SchemeRow* r : it->second) {
        net.push_back(r->report.net);
        d2d.push_back(r->report.d2d_total);
        cu.push_back(r->report.cu_total);
        jain.push_back(r->jain);
        t.push_back(r->t_value);
      }
      SummaryRow s;
      s.sweep = {param, value};
      s.scheme = scheme;
      s.trials = static_cast<int>(it->second.size());
      s.net = stat_of(net);
      s.d2d_total = stat_of(d2d);
      s.cu_total = stat_of(cu);
      s.jain = stat_of(jain);
      s.t_value = stat_of(t);
      out.push_back(s);
    }
  }
  return out;
}

ExperimentResult run_sweeps(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  struct Job {
    SweepPoint point;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& point : sweep_points(cfg)) {
    for (int i = 0; i < cfg.trials; ++i) jobs.push_back({point, cfg.base_seed + static_cast<std::uint64_t>(i)});
  }

  std::vector<std::optional<TrialResult>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_trial(cfg, jobs[i].seed, jobs[i].point);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult out;
  out.trials.reserve(results.size());
  for (auto& r : results) {
    for (const auto& row : r->rows) out.rows.push_back(row);
    out.trials.push_back(std::move(*r));
  }
  out.summary = summarize(out.rows);
  return out;
}

std::string rows_csv(const std::vector<SchemeRow>& rows) {
  std::string out = std::string(kRowsHeader) + "\n";
  for (const auto& r : rows) {
    out += join_csv({std::to_string(r.seed), r.sweep.param, sweep_value_text(r.sweep), to_string(r.scheme),
                     fmt_double(r.position.x()), fmt_double(r.position.y()), fmt_double(r.report.d2d_total),
                     fmt_double(r.report.cu_total), fmt_double(r.report.net), fmt_double(r.jain),
                     fmt_double(r.t_value), std::to_string(r.iters), to_string(r.stop_reason)});
    out += '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& s : summary) {
    out += join_csv({s.sweep.param, sweep_value_text(s.sweep), to_string(s.scheme), std::to_string(s.trials),
                     fmt_double(s.net.mean), fmt_double(s.net.std), fmt_double(s.d2d_total.mean),
                     fmt_double(s.d2d_total.std), fmt_double(s.cu_total.mean), fmt_double(s.cu_total.std),
                     fmt_double(s.jain.mean), fmt_double(s.jain.std), fmt_double(s.t_value.mean),
                     fmt_double(s.t_value.std)});
    out += '\n';
  }
  return out;
}

std::string trace_csv(const PlacementResult& result) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& e : result.trace) {
    out += join_csv({std::to_string(e.iter), fmt_double(e.position.x()), fmt_double(e.position.y()),
                     fmt_double(e.objective)});
    out += '\n';
  }
  return out;
}

void write_experiment(const ExperimentResult& result, const fs::path& out_dir) {
  std::vector<fs::path> created;
  auto write_file = [&](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    created.push_back(path);
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  };
  const fs::path traces = out_dir / "traces";
  const bool had_traces = fs::exists(traces);
  try {
    fs::create_directories(traces);
    write_file(out_dir / "rows.csv", rows_csv(result.rows));
    write_file(out_dir / "summary.csv", summary_csv(result.summary));
    for (const auto& t : result.trials) {
      const std::string stem = t.sweep.param + "_" + sweep_value_text(t.sweep) + "_seed" + std::to_string(t.seed);
      write_file(traces / (stem + "_d2d.csv"), trace_csv(t.d2d));
      write_file(traces / (stem + "_cu.csv"), trace_csv(t.cu));
      write_file(traces / (stem + "_joint.csv"), trace_csv(t.joint));
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : created) fs::remove(p, ec);
    if (!had_traces) fs::remove(traces, ec);
    throw;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  ExperimentResult result = run_sweeps(cfg, workers);
  write_experiment(result, cfg.out_dir);
  return result;
}

}  // namespace uavris
