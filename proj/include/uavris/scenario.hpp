#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "uavris/radio_config.hpp"
#include "uavris/types.hpp"

namespace uavris {

enum class LinkClass { LoS, NLoS };

/// Axis-aligned box standing on the ground: [x_min,x_max] x [y_min,y_max] x [0,height].
struct Obstacle {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
  double height;

  bool footprint_contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  bool operator==(const Obstacle&) const = default;
};

struct Region {
  double x_lo;
  double x_hi;
  double y_lo;
  double y_hi;

  Vector2 center() const { return {0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)}; }
  bool contains(double x, double y) const { return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi; }
  bool operator==(const Region&) const = default;
};

struct D2DPair {
  Position3 tx;
  Position3 rx;
  bool operator==(const D2DPair&) const = default;
};

struct Scenario {
  std::vector<D2DPair> d2d_pairs;
  std::vector<Position3> cus;
  std::vector<Obstacle> obstacles;
  Region region{0.0, 300.0, 0.0, 300.0};
  double uav_height = 25.0;
  RadioConfig radio;

  int num_pairs() const { return static_cast<int>(d2d_pairs.size()); }
  int num_cus() const { return static_cast<int>(cus.size()); }
  /// K = 2M + N devices transmitting at once.
  int num_devices() const { return 2 * num_pairs() + num_cus(); }
  /// Throws std::invalid_argument on the first broken invariant.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

struct GenerationConfig {
  int num_pairs = 80;
  int num_cus = 30;
  int num_obstacles = 45;
  Region region{0.0, 300.0, 0.0, 300.0};
  double uav_height = 25.0;
  double user_height = 1.5;
  double max_pair_distance = 50.0;
  double obstacle_side_min = 10.0;
  double obstacle_side_max = 30.0;
  double obstacle_height_min = 10.0;
  double obstacle_height_max = 40.0;
  int max_attempts = 10000;

  void validate() const;
  bool operator==(const GenerationConfig&) const = default;
};

template <typename Scalar>
Scalar distance3(const Position3T<Scalar>& p, const Position3T<Scalar>& q) {
  return (p - q).norm();
}

template <typename Scalar>
Scalar horizontal_distance(const Position3T<Scalar>& p, const Position3T<Scalar>& q) {
  return (p.template head<2>() - q.template head<2>()).norm();
}

/// True iff the open segment (p, q) meets the closed box of `obs`.
/// Slab clipping; a segment that only touches the box at one of its own
/// endpoints is not blocked.
template <typename Scalar>
bool segment_blocked(const Position3T<Scalar>& p, const Position3T<Scalar>& q, const Obstacle& obs) {
  const Scalar lo[3] = {Scalar(obs.x_min), Scalar(obs.y_min), Scalar(0)};
  const Scalar hi[3] = {Scalar(obs.x_max), Scalar(obs.y_max), Scalar(obs.height)};
  Scalar t_enter = Scalar(0);
  Scalar t_exit = Scalar(1);
  for (int axis = 0; axis < 3; ++axis) {
    const Scalar d = q[axis] - p[axis];
    if (d == Scalar(0)) {
      if (p[axis] < lo[axis] || p[axis] > hi[axis]) return false;
      continue;
    }
    Scalar t0 = (lo[axis] - p[axis]) / d;
    Scalar t1 = (hi[axis] - p[axis]) / d;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_enter) t_enter = t0;
    if (t1 < t_exit) t_exit = t1;
    if (t_enter > t_exit) return false;
  }
  if (t_enter < t_exit) return true;
  // Single contact point: blocked only if it is interior to the segment.
  return t_enter > Scalar(0) && t_enter < Scalar(1);
}

LinkClass classify_link(const Position3& p, const Position3& q, std::span<const Obstacle> obstacles);

/// Deterministic in `seed`. Users are drawn first, then obstacles, each from
/// its own stream, so scenarios sharing a seed share users, and the obstacle
/// set for a smaller count is a prefix of the set for a larger one.
Scenario generate_scenario(const GenerationConfig& gen, std::uint64_t seed, const RadioConfig& radio = {});

}  // namespace uavris
