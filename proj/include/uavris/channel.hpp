#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "uavris/radio_config.hpp"
#include "uavris/rng.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

template <typename Scalar>
Scalar dbm_to_watt(Scalar dbm) {
  using std::pow;
  return pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
Scalar watt_to_dbm(Scalar watt) {
  using std::log10;
  return Scalar(10) * log10(watt) + Scalar(30);
}

inline const PathLossParams& path_loss_params(LinkClass cls, const RadioConfig& radio) {
  return cls == LinkClass::LoS ? radio.pl_los : radio.pl_nlos;
}

/// alpha + 10 beta log10(d). Throws std::invalid_argument for d <= 0.
double path_loss_db(double distance_m, LinkClass cls, const RadioConfig& radio);

/// Rician K values above this are treated as pure line of sight.
inline constexpr double kMaxRicianK = 1e6;

/// Maps a CN(0,1) draw to a unit mean-square fading amplitude.
/// LoS: |sqrt(k/(k+1)) + w/sqrt(k+1)| (Rician); NLoS: |w| (Rayleigh, k ignored).
double fading_amplitude(LinkClass cls, double rician_k, std::complex<double> w);

/// Draws w ~ CN(0,1) from `rng` and maps it through fading_amplitude.
double sample_fading_amp(LinkClass cls, double rician_k, Rng& rng);

enum class ChannelMode { Expected, Sampled };

struct PairChannel {
  LinkClass to_ris;    // x_m -> RIS
  LinkClass from_ris;  // RIS -> y_m
  double kappa;        // |sum_z |h||g||^2
};

struct CuChannel {
  LinkClass link;  // z_n -> UAV
  double f_sq;     // |f_n|^2
};

/// Link classes and fading aggregates as seen from one UAV position.
struct ChannelState {
  std::vector<PairChannel> pairs;
  std::vector<CuChannel> cus;
  ChannelMode mode = ChannelMode::Expected;
  std::uint64_t seed = 0;

  bool operator==(const ChannelState&) const;
};

/// One trial's channel: the fading draw is frozen at construction, and
/// state_at() re-derives link classes for any candidate UAV position.
///
/// In Sampled mode every element and every CU gets one CN(0,1) variate. The
/// amplitude that variate maps to depends on the link class, so moving the UAV
/// across a blockage boundary swaps Rician for Rayleigh without redrawing.
/// Aggregates for all class combinations are tabulated up front.
///
/// Holds a reference to the scenario, which must outlive the model.
class ChannelModel {
 public:
  ChannelModel(const Scenario& scn, ChannelMode mode, std::uint64_t seed);

  ChannelState state_at(const Position3& r) const;

  double kappa(int pair, LinkClass to_ris, LinkClass from_ris) const {
    return kappa_[static_cast<std::size_t>(pair)][combo(to_ris, from_ris)];
  }
  double f_sq(int cu, LinkClass link) const {
    return f_sq_[static_cast<std::size_t>(cu)][static_cast<std::size_t>(link)];
  }

  const Scenario& scenario() const { return *scn_; }
  ChannelMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

 private:
  static std::size_t combo(LinkClass a, LinkClass b) {
    return 2 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
  }

  const Scenario* scn_;
  ChannelMode mode_;
  std::uint64_t seed_;
  std::vector<std::array<double, 4>> kappa_;
  std::vector<std::array<double, 2>> f_sq_;
};

ChannelState build_channel_state(const Scenario& scn, const Position3& r, ChannelMode mode, std::uint64_t seed);

/// (kappa_m / N0) 10^((P_x + G_tx + G_rx - alpha_1 - alpha_2 - 30) / 10), alphas per hop class.
double eta_m(int pair, const ChannelState& state, const Scenario& scn);

/// (|f_n|^2 / N0) 10^((P_z + G_tx + G_uav - alpha - 30) / 10).
double lambda_n(int cu, const ChannelState& state, const Scenario& scn);

}  // namespace uavris
