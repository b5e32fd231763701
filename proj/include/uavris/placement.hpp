#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavris/channel.hpp"
#include "uavris/scenario.hpp"
#include "uavris/throughput.hpp"
#include "uavris/types.hpp"

namespace uavris {

/// Horizontal box for the UAV position; the height is fixed elsewhere.
struct Bounds {
  Vector2 lo;
  Vector2 hi;

  bool contains(const Vector2& p) const { return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all(); }
  Vector2 clamp(const Vector2& p) const { return p.cwiseMax(lo).cwiseMin(hi); }
  Vector2 center() const { return 0.5 * (lo + hi); }
  bool operator==(const Bounds& o) const { return lo == o.lo && hi == o.hi; }

  static Bounds of(const Region& r) { return {{r.x_lo, r.y_lo}, {r.x_hi, r.y_hi}}; }
};

struct OptimizerConfig {
  double learning_rate = 0.1;
  /// Exclusion radius around users, gradient-norm threshold and step threshold.
  double tolerance = 1e-4;
  /// Push applied per axis when an iterate lands inside an exclusion disc.
  double displacement = 1.0;
  int max_iters = 10000;
  /// Defaults to the scenario region when unset.
  std::optional<Bounds> bounds;

  void validate() const;
  bool operator==(const OptimizerConfig&) const = default;
};

struct SearchConfig {
  int num_directions = 360;
  double step_size = 1.0;
  int max_steps = 300;
  std::optional<Bounds> bounds;

  void validate() const;
  bool operator==(const SearchConfig&) const = default;
};

enum class StopReason { GradSmall, StepSmall, MaxIters, SearchExhausted };

std::string to_string(StopReason reason);

struct TraceEntry {
  int iter;
  Position3 position;
  double objective;
  double best_objective;  // best seen up to and including this entry
};

struct PlacementResult {
  Position3 position;
  /// Rate (bps/Hz) for the ascent optimizers, T-value for the joint search.
  double objective = 0.0;
  std::vector<TraceEntry> trace;
  StopReason stop_reason = StopReason::MaxIters;
  /// Ascent steps, or in-bounds probes for the joint search.
  int iterations = 0;
  /// Full rates at `position` (filled by the scenario-aware entry points).
  RateReport report;
};

using ObjectiveFn = std::function<double(const Position3&)>;
using GradientFn = std::function<Vector2(const Position3&)>;

/// d D_D2D / d(x_r, y_r) at fixed height, link classes frozen at r.
Vector2 grad_d2d(const Position3& r, const ChannelState& state, const Scenario& scn);

/// d D_CU / d(x_r, y_r) at fixed height, link classes frozen at r.
Vector2 grad_cu(const Position3& r, const ChannelState& state, const Scenario& scn);

/// Moves `r` off every exclusion disc of radius `tolerance`, pushing each
/// axis by `displacement` in the direction sign(r - c), sign(0) = -1. A push
/// that would leave `bounds` is applied in the opposite direction instead.
Position3 push_out_of_exclusions(Position3 r, std::span<const Position3> centers, double tolerance,
                                 double displacement, const Bounds& bounds);

/// Projected gradient ascent with exclusion zones. `cfg.bounds` must be set.
///
/// Each iteration steps r + learning_rate * grad(r), pushes the iterate out of
/// any exclusion disc, clamps to bounds, then stops if the gradient norm at the
/// new iterate or the step length falls below tolerance, or max_iters is hit.
/// The returned position is the final iterate; the trace records objective and
/// best-so-far at every iterate including r0.
PlacementResult gradient_ascent(const GradientFn& grad, const ObjectiveFn& objective, const OptimizerConfig& cfg,
                                std::span<const Position3> exclusion_centers, const Position3& r0);

/// Algorithm for the D2D pairs: ascent on D_D2D from the bounds center,
/// excluding every transmitter and receiver. Throws std::invalid_argument if M = 0.
PlacementResult optimize_d2d(const Scenario& scn, const ChannelModel& model, const OptimizerConfig& cfg);

/// Same for the CUs on D_CU. Throws std::invalid_argument if N = 0.
PlacementResult optimize_cu(const Scenario& scn, const ChannelModel& model, const OptimizerConfig& cfg);

/// (D_CU(r_C)/N) / (D_D2D(r_D)/M), the per-capita ratio the joint search preserves.
double target_ratio(const RateReport& at_d2d_optimum, const RateReport& at_cu_optimum);

/// Directional search minimizing ratio_deviation around the midpoint of
/// r_D and r_C. Probes anchor + step_size * k * (cos t, sin t) for
/// k = 1..max_steps along num_directions evenly spaced headings, skips probes
/// outside bounds, and keeps the first strict minimizer in scan order.
PlacementResult joint_search(const Position3& r_d, const Position3& r_c, double phi, const SearchConfig& cfg,
                             const ChannelModel& model);

struct GridOptimum {
  Position3 position;
  double value;
};

/// Exhaustive maximization over a uniform grid; rows (y) outer, columns (x)
/// inner, first maximum wins.
GridOptimum grid_oracle(const ObjectiveFn& objective, const Bounds& bounds, double height, double resolution);

}  // namespace uavris
