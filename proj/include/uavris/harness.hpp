#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavris/channel.hpp"
#include "uavris/config.hpp"
#include "uavris/placement.hpp"
#include "uavris/scenario.hpp"
#include "uavris/throughput.hpp"

namespace uavris {

enum class Scheme { JointOpt, D2DOnlyPlacement, CUOnlyPlacement };

inline constexpr std::array<Scheme, 3> kSchemes = {Scheme::JointOpt, Scheme::D2DOnlyPlacement,
                                                   Scheme::CUOnlyPlacement};

std::string to_string(Scheme scheme);

/// One sweep coordinate. `param` is "none", "obstacles" or "rician_k".
struct SweepPoint {
  std::string param = "none";
  double value = 0.0;
};

/// Applies a sweep coordinate to a copy of the config.
ExperimentConfig apply_sweep(const ExperimentConfig& cfg, const SweepPoint& point);

/// All sweep coordinates in output order: obstacle series, then K series,
/// or a single "none" point when no sweep is configured.
std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg);

struct SchemeRow {
  std::uint64_t seed = 0;
  SweepPoint sweep;
  Scheme scheme = Scheme::JointOpt;
  Position3 position;
  RateReport report;
  double jain = 1.0;
  bool jain_all_zero = false;
  double t_value = 0.0;
  int iters = 0;
  StopReason stop_reason = StopReason::MaxIters;
};

struct TrialResult {
  std::uint64_t seed = 0;
  SweepPoint sweep;
  PlacementResult d2d;
  PlacementResult cu;
  PlacementResult joint;
  double phi = 0.0;
  /// Ordered as kSchemes.
  std::array<SchemeRow, 3> rows;
};

/// Scores the three placements on one scenario and channel, given the two
/// single-population optima. Runs the joint search from their midpoint.
TrialResult evaluate_trial(const ChannelModel& model, PlacementResult d2d, PlacementResult cu,
                           const SearchConfig& search, std::uint64_t seed, const SweepPoint& sweep);

/// Generates the scenario for `seed`, freezes its fading with the same seed,
/// runs both ascent optimizers and then evaluate_trial.
TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed, const SweepPoint& sweep);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single trial
};

struct SummaryRow {
  SweepPoint sweep;
  Scheme scheme = Scheme::JointOpt;
  int trials = 0;
  Stat net, d2d_total, cu_total, jain, t_value;
};

struct ExperimentResult {
  std::vector<TrialResult> trials;  // ordered by (sweep point, trial)
  std::vector<SchemeRow> rows;      // ordered by (sweep point, trial, scheme)
  std::vector<SummaryRow> summary;  // ordered by (sweep point, scheme)
};

/// Runs every (sweep point, trial) job with seeds base_seed + i on a pool of
/// `workers` threads (0 = hardware concurrency). Output order does not depend
/// on completion order.
ExperimentResult run_sweeps(const ExperimentConfig& cfg, unsigned workers = 0);

std::vector<SummaryRow> summarize(const std::vector<SchemeRow>& rows);

inline constexpr const char* kRowsHeader =
    "seed,sweep_param,sweep_value,scheme,x,y,d2d_total,cu_total,net,jain,t_value,iters,stop_reason";
inline constexpr const char* kSummaryHeader =
    "sweep_param,sweep_value,scheme,trials,net_mean,net_std,d2d_mean,d2d_std,cu_mean,cu_std,jain_mean,jain_std,"
    "t_mean,t_std";
inline constexpr const char* kTraceHeader = "iter,x,y,objective";

std::string rows_csv(const std::vector<SchemeRow>& rows);
std::string summary_csv(const std::vector<SummaryRow>& summary);
std::string trace_csv(const PlacementResult& result);

/// Writes rows.csv, summary.csv and traces/ under `out_dir`. Files created by
/// a failed write are removed again.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// run_sweeps followed by write_experiment into cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers = 0);

}  // namespace uavris
