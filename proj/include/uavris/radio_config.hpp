#pragma once

namespace uavris {

struct PathLossParams {
  double alpha_db;
  double beta;
  bool operator==(const PathLossParams&) const = default;
};

/// Link-budget constants shared by every link of the network.
/// Defaults are the 28 GHz mmWave reference deployment.
struct RadioConfig {
  double tx_power_d2d_dbm = 30.0;
  double tx_power_cu_dbm = 30.0;
  double gain_tx_dbi = 24.5;
  double gain_rx_dbi = 24.5;
  double gain_uav_dbi = 24.5;
  double noise_dbm = -100.0;
  int ris_elements = 250;
  PathLossParams pl_los{61.2, 2.0};
  PathLossParams pl_nlos{72.0, 2.92};
  double rician_k = 5.0;
  double carrier_ghz = 28.0;

  /// Throws std::invalid_argument naming the first violated field.
  void validate() const;

  bool operator==(const RadioConfig&) const = default;
};

}  // namespace uavris
