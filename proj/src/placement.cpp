#include "uavris/placement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uavris {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void validate_bounds(const std::optional<Bounds>& b, const char* what) {
  if (b) require(b->lo.allFinite() && b->hi.allFinite() && (b->lo.array() < b->hi.array()).all(), what);
}

double sign(double x) { return x > 0.0 ? 1.0 : -1.0; }

// d/dx of the 3-D distance from `user` to r, for x in {x_r, y_r}.
Vector2 distance_gradient(const Position3& user, const Position3& r, double d) {
  return (r.head<2>() - user.head<2>()) / d;
}

/// Re-deriving the state dominates the cost of an ascent step; the objective
/// and gradient are queried at the same iterate back to back.
class StateCache {
 public:
  explicit StateCache(const ChannelModel& model) : model_(model) {}

  const ChannelState& at(const Position3& r) {
    if (!valid_ || r != last_) {
      state_ = model_.state_at(r);
      last_ = r;
      valid_ = true;
    }
    return state_;
  }

 private:
  const ChannelModel& model_;
  Position3 last_;
  ChannelState state_;
  bool valid_ = false;
};

Bounds resolve(const std::optional<Bounds>& b, const Scenario& scn) { return b ? *b : Bounds::of(scn.region); }

}  // namespace

void OptimizerConfig::validate() const {
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "optimizer.learning_rate must be > 0");
  require(tolerance > 0.0 && std::isfinite(tolerance), "optimizer.tolerance must be > 0");
  require(displacement > tolerance && std::isfinite(displacement), "optimizer.displacement must exceed tolerance");
  require(max_iters >= 1, "optimizer.max_iters must be >= 1");
  validate_bounds(bounds, "optimizer bounds need r_min < r_max componentwise");
}

void SearchConfig::validate() const {
  require(num_directions >= 1, "search.num_directions must be >= 1");
  require(step_size > 0.0 && std::isfinite(step_size), "search.step_size must be > 0");
  require(max_steps >= 1, "search.max_steps must be >= 1");
  validate_bounds(bounds, "search bounds need s_min < s_max componentwise");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GradSmall: return "GradSmall";
    case StopReason::StepSmall: return "StepSmall";
    case StopReason::MaxIters: return "MaxIters";
    case StopReason::SearchExhausted: return "SearchExhausted";
  }
  return "Unknown";
}

Vector2 grad_d2d(const Position3& r, const ChannelState& state, const Scenario& scn) {
  Vector2 g = Vector2::Zero();
  for (int m = 0; m < scn.num_pairs(); ++m) {
    const auto& users = scn.d2d_pairs[static_cast<std::size_t>(m)];
    const auto& link = state.pairs[static_cast<std::size_t>(m)];
    const double eta = eta_m(m, state, scn);
    if (eta == 0.0) continue;
    const double b1 = path_loss_params(link.to_ris, scn.radio).beta;
    const double b2 = path_loss_params(link.from_ris, scn.radio).beta;
    const double d1 = distance3(users.tx, r);
    const double d2 = distance3(users.rx, r);
    const double p1 = std::pow(d1, -b1);
    const double p2 = std::pow(d2, -b2);
    const Vector2 a = b1 * (p1 / d1) * distance_gradient(users.tx, r, d1) * p2 +
                      b2 * p1 * (p2 / d2) * distance_gradient(users.rx, r, d2);
    g -= eta * a / (std::numbers::ln2 * (1.0 + eta * p1 * p2));
  }
  return g;
}

Vector2 grad_cu(const Position3& r, const ChannelState& state, const Scenario& scn) {
  Vector2 g = Vector2::Zero();
  for (int n = 0; n < scn.num_cus(); ++n) {
    const auto& user = scn.cus[static_cast<std::size_t>(n)];
    const double lambda = lambda_n(n, state, scn);
    if (lambda == 0.0) continue;
    const double beta = path_loss_params(state.cus[static_cast<std::size_t>(n)].link, scn.radio).beta;
    const double d = distance3(user, r);
    const double p = std::pow(d, -beta);
    g -= lambda * beta * (p / d) * distance_gradient(user, r, d) / (std::numbers::ln2 * (1.0 + lambda * p));
  }
  return g;
}

Position3 push_out_of_exclusions(Position3 r, std::span<const Position3> centers, double tolerance,
                                 double displacement, const Bounds& bounds) {
  for (const auto& c : centers) {
    if (horizontal_distance(r, c) >= tolerance) continue;
    for (int axis = 0; axis < 2; ++axis) {
      const double s = sign(r[axis] - c[axis]);
      double moved = r[axis] + s * displacement;
      if (moved < bounds.lo[axis] || moved > bounds.hi[axis]) moved = r[axis] - s * displacement;
      r[axis] = moved;
    }
  }
  return r;
}

PlacementResult gradient_ascent(const GradientFn& grad, const ObjectiveFn& objective, const OptimizerConfig& cfg,
                                std::span<const Position3> exclusion_centers, const Position3& r0) {
  cfg.validate();
  require(cfg.bounds.has_value(), "gradient_ascent: bounds must be resolved");
  const Bounds& bounds = *cfg.bounds;
  const double height = r0.z();

  PlacementResult out;
  Position3 r = r0;
  double f = objective(r);
  double best = f;
  out.trace.push_back({0, r, f, best});
  Vector2 g = grad(r);

  for (int k = 0;;) {
    Position3 next = at_height(r.head<2>() + cfg.learning_rate * g, height);
    next = push_out_of_exclusions(next, exclusion_centers, cfg.tolerance, cfg.displacement, bounds);
    next = at_height(bounds.clamp(next.head<2>()), height);
    ++k;

    f = objective(next);
    if (f > best) best = f;
    out.trace.push_back({k, next, f, best});

    const Vector2 g_next = grad(next);
    const double step = (next - r).norm();
    r = next;
    g = g_next;
    if (g_next.norm() < cfg.tolerance) {
      out.stop_reason = StopReason::GradSmall;
    } else if (step < cfg.tolerance) {
      out.stop_reason = StopReason::StepSmall;
    } else if (k >= cfg.max_iters) {
      out.stop_reason = StopReason::MaxIters;
    } else {
      continue;
    }
    out.iterations = k;
    break;
  }

  out.position = r;
  out.objective = f;
  return out;
}

namespace {

Position3 initial_guess(const Scenario& scn, const Bounds& bounds, std::span<const Position3> centers,
                        const OptimizerConfig& cfg) {
  const Position3 center = at_height(bounds.center(), scn.uav_height);
  return push_out_of_exclusions(center, centers, cfg.tolerance, cfg.displacement, bounds);
}

template <typename Objective, typename Gradient>
PlacementResult run_ascent(const Scenario& scn, const ChannelModel& model, const OptimizerConfig& cfg,
                           std::span<const Position3> centers, Objective objective_of, Gradient gradient_of) {
  OptimizerConfig resolved = cfg;
  resolved.bounds = resolve(cfg.bounds, scn);
  StateCache cache(model);
  const auto objective = [&](const Position3& r) { return objective_of(r, cache.at(r)); };
  const auto grad = [&](const Position3& r) { return gradient_of(r, cache.at(r)); };
  const Position3 r0 = initial_guess(scn, *resolved.bounds, centers, resolved);
  PlacementResult out = gradient_ascent(grad, objective, resolved, centers, r0);
  out.report = net_throughput(out.position, cache.at(out.position), scn);
  return out;
}

}  // namespace

PlacementResult optimize_d2d(const Scenario& scn, const ChannelModel& model, const OptimizerConfig& cfg) {
  require(scn.num_pairs() > 0, "optimize_d2d: scenario has no D2D pairs");
  std::vector<Position3> centers;
  centers.reserve(2 * scn.d2d_pairs.size());
  for (const auto& pair : scn.d2d_pairs) {
    centers.push_back(pair.tx);
    centers.push_back(pair.rx);
  }
  return run_ascent(
      scn, model, cfg, centers, [&](const Position3& r, const ChannelState& s) { return total_d2d(r, s, scn); },
      [&](const Position3& r, const ChannelState& s) { return grad_d2d(r, s, scn); });
}

PlacementResult optimize_cu(const Scenario& scn, const ChannelModel& model, const OptimizerConfig& cfg) {
  require(scn.num_cus() > 0, "optimize_cu: scenario has no CUs");
  return run_ascent(
      scn, model, cfg, scn.cus, [&](const Position3& r, const ChannelState& s) { return total_cu(r, s, scn); },
      [&](const Position3& r, const ChannelState& s) { return grad_cu(r, s, scn); });
}

double target_ratio(const RateReport& at_d2d_optimum, const RateReport& at_cu_optimum) {
  const auto m = static_cast<double>(at_d2d_optimum.per_pair_rates.size());
  const auto n = static_cast<double>(at_cu_optimum.per_cu_rates.size());
  require(m > 0.0 && n > 0.0, "target_ratio: needs at least one pair and one CU");
  const double d2d_avg = at_d2d_optimum.d2d_total / m;
  require(d2d_avg > 0.0, "target_ratio: zero D2D throughput at the D2D optimum");
  return (at_cu_optimum.cu_total / n) / d2d_avg;
}

PlacementResult joint_search(const Position3& r_d, const Position3& r_c, double phi, const SearchConfig& cfg,
                             const ChannelModel& model) {
  cfg.validate();
  const Scenario& scn = model.scenario();
  const Bounds bounds = resolve(cfg.bounds, scn);
  const double height = r_d.z();
  const Vector2 anchor = 0.5 * (r_d.head<2>() + r_c.head<2>());

  PlacementResult out;
  out.position = at_height(anchor, height);
  out.objective = ratio_deviation(out.position, phi, model);
  out.trace.push_back({0, out.position, out.objective, out.objective});
  out.stop_reason = StopReason::SearchExhausted;

  const double degrees_per_direction = 360.0 / cfg.num_directions;
  const bool anchor_inside = bounds.contains(anchor);
  int probes = 0;
  for (int i = 0; i < cfg.num_directions; ++i) {
    const double theta = degrees_per_direction * i * std::numbers::pi / 180.0;
    const Vector2 direction(std::cos(theta), std::sin(theta));
    for (int k = 1; k <= cfg.max_steps; ++k) {
      const Vector2 probe = anchor + direction * (cfg.step_size * k);
      if (!bounds.contains(probe)) {
        // The box is convex: a ray leaving it from an inside anchor never re-enters.
        if (anchor_inside) break;
        continue;
      }
      ++probes;
      const Position3 s = at_height(probe, height);
      const double value = ratio_deviation(s, phi, model);
      if (value < out.objective) {
        out.objective = value;
        out.position = s;
        out.trace.push_back({probes, s, value, value});
      }
    }
  }
  out.iterations = probes;
  out.report = net_throughput(out.position, model);
  return out;
}

GridOptimum grid_oracle(const ObjectiveFn& objective, const Bounds& bounds, double height, double resolution) {
  require(resolution > 0.0, "grid_oracle: resolution must be > 0");
  const Vector2 span = bounds.hi - bounds.lo;
  const int nx = static_cast<int>(std::floor(span.x() / resolution + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor(span.y() / resolution + 1e-9)) + 1;
  GridOptimum best{at_height(bounds.lo, height), -std::numeric_limits<double>::infinity()};
  bool first = true;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Position3 p(bounds.lo.x() + i * resolution, bounds.lo.y() + j * resolution, height);
      const double v = objective(p);
      if (first || v > best.value) {
        best = {p, v};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace uavris
