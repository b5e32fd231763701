#include "uavris/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "uavris/rng.hpp"

namespace uavris {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite(const Position3& p) { return p.allFinite(); }

}  // namespace

void RadioConfig::validate() const {
  require(std::isfinite(tx_power_d2d_dbm), "radio.tx_power_d2d_dbm must be finite");
  require(std::isfinite(tx_power_cu_dbm), "radio.tx_power_cu_dbm must be finite");
  require(std::isfinite(gain_tx_dbi), "radio.gain_tx_dbi must be finite");
  require(std::isfinite(gain_rx_dbi), "radio.gain_rx_dbi must be finite");
  require(std::isfinite(gain_uav_dbi), "radio.gain_uav_dbi must be finite");
  require(std::isfinite(noise_dbm), "radio.noise_dbm must be finite");
  require(ris_elements >= 1, "radio.ris_elements must be >= 1");
  require(std::isfinite(pl_los.alpha_db), "radio.pl_los.alpha_db must be finite");
  require(std::isfinite(pl_nlos.alpha_db), "radio.pl_nlos.alpha_db must be finite");
  require(pl_los.beta > 0.0 && std::isfinite(pl_los.beta), "radio.pl_los.beta must be > 0");
  require(pl_nlos.beta > 0.0 && std::isfinite(pl_nlos.beta), "radio.pl_nlos.beta must be > 0");
  require(rician_k >= 0.0 && !std::isnan(rician_k), "radio.rician_k must be >= 0");
}

void Scenario::validate() const {
  require(region.x_lo < region.x_hi && region.y_lo < region.y_hi, "region must be non-degenerate");
  require(std::isfinite(uav_height) && uav_height > 0.0, "uav_height must be > 0");
  radio.validate();
  auto check_user = [&](const Position3& p, const char* what) {
    require(finite(p), std::string(what) + " position must be finite");
    require(p.z() >= 0.0, std::string(what) + " height must be >= 0");
    require(p.z() < uav_height, std::string(what) + " must be below the UAV");
    require(region.contains(p.x(), p.y()), std::string(what) + " must lie inside the region");
  };
  for (const auto& pair : d2d_pairs) {
    check_user(pair.tx, "D2D transmitter");
    check_user(pair.rx, "D2D receiver");
  }
  for (const auto& cu : cus) check_user(cu, "CU");
  for (const auto& o : obstacles) {
    require(o.x_min < o.x_max && o.y_min < o.y_max, "obstacle footprint must be non-degenerate");
    require(o.height > 0.0, "obstacle height must be > 0");
  }
}

void GenerationConfig::validate() const {
  require(num_pairs >= 0, "generation.num_pairs must be >= 0");
  require(num_cus >= 0, "generation.num_cus must be >= 0");
  require(num_obstacles >= 0, "generation.num_obstacles must be >= 0");
  require(region.x_lo < region.x_hi && region.y_lo < region.y_hi, "generation region must be non-degenerate");
  require(user_height >= 0.0, "generation.user_height must be >= 0");
  require(uav_height > user_height, "generation.uav_height must exceed user_height");
  require(max_pair_distance > 0.0, "generation.max_pair_distance must be > 0");
  require(obstacle_side_min > 0.0 && obstacle_side_min <= obstacle_side_max,
          "generation.obstacle_side_min must be in (0, obstacle_side_max]");
  require(obstacle_side_max <= region.x_hi - region.x_lo && obstacle_side_max <= region.y_hi - region.y_lo,
          "generation.obstacle_side_max must fit inside the region");
  require(obstacle_height_min > 0.0 && obstacle_height_min <= obstacle_height_max,
          "generation.obstacle_height_min must be in (0, obstacle_height_max]");
  require(max_attempts >= 1, "generation.max_attempts must be >= 1");
}

LinkClass classify_link(const Position3& p, const Position3& q, std::span<const Obstacle> obstacles) {
  for (const auto& o : obstacles) {
    if (segment_blocked(p, q, o)) return LinkClass::NLoS;
  }
  return LinkClass::LoS;
}

Scenario generate_scenario(const GenerationConfig& gen, std::uint64_t seed, const RadioConfig& radio) {
  gen.validate();
  radio.validate();

  Scenario scn;
  scn.region = gen.region;
  scn.uav_height = gen.uav_height;
  scn.radio = radio;

  const Region& reg = gen.region;
  Rng users = make_rng(seed, RngStream::Users);
  std::uniform_real_distribution<double> ux(reg.x_lo, reg.x_hi);
  std::uniform_real_distribution<double> uy(reg.y_lo, reg.y_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto ground = [&](double x, double y) { return Position3{x, y, gen.user_height}; };

  scn.d2d_pairs.reserve(gen.num_pairs);
  for (int m = 0; m < gen.num_pairs; ++m) {
    const Position3 tx = ground(ux(users), uy(users));
    bool placed = false;
    for (int attempt = 0; attempt < gen.max_attempts; ++attempt) {
      // Uniform over the disc of radius max_pair_distance.
      const double radius = gen.max_pair_distance * std::sqrt(unit(users));
      const double angle = 2.0 * std::numbers::pi * unit(users);
      const double x = tx.x() + radius * std::cos(angle);
      const double y = tx.y() + radius * std::sin(angle);
      if (reg.contains(x, y)) {
        scn.d2d_pairs.push_back({tx, ground(x, y)});
        placed = true;
        break;
      }
    }
    if (!placed) throw std::runtime_error("could not place D2D receiver " + std::to_string(m));
  }

  scn.cus.reserve(gen.num_cus);
  for (int n = 0; n < gen.num_cus; ++n) scn.cus.push_back(ground(ux(users), uy(users)));

  Rng obstacles = make_rng(seed, RngStream::Obstacles);
  std::uniform_real_distribution<double> side(gen.obstacle_side_min, gen.obstacle_side_max);
  std::uniform_real_distribution<double> height(gen.obstacle_height_min, gen.obstacle_height_max);

  auto covers_user = [&](const Obstacle& o) {
    for (const auto& pair : scn.d2d_pairs) {
      if (o.footprint_contains(pair.tx.x(), pair.tx.y()) || o.footprint_contains(pair.rx.x(), pair.rx.y()))
        return true;
    }
    for (const auto& cu : scn.cus) {
      if (o.footprint_contains(cu.x(), cu.y())) return true;
    }
    return false;
  };

  scn.obstacles.reserve(gen.num_obstacles);
  for (int k = 0; k < gen.num_obstacles; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < gen.max_attempts; ++attempt) {
      const double wx = side(obstacles);
      const double wy = side(obstacles);
      const double h = height(obstacles);
      const double x0 = std::uniform_real_distribution<double>(reg.x_lo, reg.x_hi - wx)(obstacles);
      const double y0 = std::uniform_real_distribution<double>(reg.y_lo, reg.y_hi - wy)(obstacles);
      const Obstacle o{x0, x0 + wx, y0, y0 + wy, h};
      if (!covers_user(o)) {
        scn.obstacles.push_back(o);
        placed = true;
        break;
      }
    }
    if (!placed) throw std::runtime_error("could not place obstacle " + std::to_string(k) + " clear of all users");
  }

  return scn;
}

}  // namespace uavris
