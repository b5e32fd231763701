#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "uavris/channel.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

/// Spectral efficiencies in bps/Hz.
struct RateReport {
  std::vector<double> per_pair_rates;
  std::vector<double> per_cu_rates;
  double d2d_total = 0.0;
  double cu_total = 0.0;
  double net = 0.0;

  /// Per-entity rates, pairs first then CUs.
  std::vector<double> all_rates() const;
};

double d2d_rate(int pair, const Position3& r, const ChannelState& state, const Scenario& scn);
double total_d2d(const Position3& r, const ChannelState& state, const Scenario& scn);

double cu_rate(int cu, const Position3& r, const ChannelState& state, const Scenario& scn);
double total_cu(const Position3& r, const ChannelState& state, const Scenario& scn);

RateReport net_throughput(const Position3& r, const ChannelState& state, const Scenario& scn);

/// Convenience: derives the state at r from the model first.
RateReport net_throughput(const Position3& r, const ChannelModel& model);

inline constexpr double kUnusablePosition = std::numeric_limits<double>::infinity();

/// Per-capita CU rate over per-capita D2D rate. Infinite when the D2D
/// population has zero throughput.
double per_capita_ratio(const RateReport& report);

/// |per_capita_ratio(s) - phi|; kUnusablePosition if the D2D average is zero.
double ratio_deviation(const Position3& s, double phi, const ChannelModel& model);

/// Jain's index (sum x)^2 / (n sum x^2). An all-zero vector is treated as
/// perfectly fair and returns 1; see jain_all_zero().
/// Throws std::invalid_argument for an empty or negative input.
double jain_index(std::span<const double> rates);
bool jain_all_zero(std::span<const double> rates);

/// One-row CSV form: seed,scheme,M,N,obstacles,K,x,y,d2d_total,cu_total,net,jain
std::string rate_report_csv_header();
std::string rate_report_csv_row(const RateReport& report, std::uint64_t seed, const std::string& scheme,
                                const Scenario& scn, const Position3& r);

}  // namespace uavris
