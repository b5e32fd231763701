#include "uavris/throughput.hpp"

#include <cmath>
#include <stdexcept>

#include "format.hpp"

namespace uavris {

std::vector<double> RateReport::all_rates() const {
  std::vector<double> out(per_pair_rates);
  out.insert(out.end(), per_cu_rates.begin(), per_cu_rates.end());
  return out;
}

double d2d_rate(int pair, const Position3& r, const ChannelState& state, const Scenario& scn) {
  const auto& users = scn.d2d_pairs.at(static_cast<std::size_t>(pair));
  const auto& link = state.pairs.at(static_cast<std::size_t>(pair));
  const double beta_up = path_loss_params(link.to_ris, scn.radio).beta;
  const double beta_down = path_loss_params(link.from_ris, scn.radio).beta;
  const double snr = eta_m(pair, state, scn) * std::pow(distance3(users.tx, r), -beta_up) *
                     std::pow(distance3(users.rx, r), -beta_down);
  return std::log2(1.0 + snr);
}

double total_d2d(const Position3& r, const ChannelState& state, const Scenario& scn) {
  double sum = 0.0;
  for (int m = 0; m < scn.num_pairs(); ++m) sum += d2d_rate(m, r, state, scn);
  return sum;
}

double cu_rate(int cu, const Position3& r, const ChannelState& state, const Scenario& scn) {
  const auto& link = state.cus.at(static_cast<std::size_t>(cu));
  const double beta = path_loss_params(link.link, scn.radio).beta;
  const double snr = lambda_n(cu, state, scn) * std::pow(distance3(scn.cus[static_cast<std::size_t>(cu)], r), -beta);
  return std::log2(1.0 + snr);
}

double total_cu(const Position3& r, const ChannelState& state, const Scenario& scn) {
  double sum = 0.0;
  for (int n = 0; n < scn.num_cus(); ++n) sum += cu_rate(n, r, state, scn);
  return sum;
}

RateReport net_throughput(const Position3& r, const ChannelState& state, const Scenario& scn) {
  RateReport rep;
  rep.per_pair_rates.reserve(scn.d2d_pairs.size());
  for (int m = 0; m < scn.num_pairs(); ++m) {
    rep.per_pair_rates.push_back(d2d_rate(m, r, state, scn));
    rep.d2d_total += rep.per_pair_rates.back();
  }
  rep.per_cu_rates.reserve(scn.cus.size());
  for (int n = 0; n < scn.num_cus(); ++n) {
    rep.per_cu_rates.push_back(cu_rate(n, r, state, scn));
    rep.cu_total += rep.per_cu_rates.back();
  }
  rep.net = rep.d2d_total + rep.cu_total;
  return rep;
}

RateReport net_throughput(const Position3& r, const ChannelModel& model) {
  return net_throughput(r, model.state_at(r), model.scenario());
}

double per_capita_ratio(const RateReport& report) {
  const auto m = static_cast<double>(report.per_pair_rates.size());
  const auto n = static_cast<double>(report.per_cu_rates.size());
  if (m == 0.0 || n == 0.0) throw std::invalid_argument("per_capita_ratio: needs at least one pair and one CU");
  const double d2d_avg = report.d2d_total / m;
  if (!(d2d_avg > 0.0)) return kUnusablePosition;
  return (report.cu_total / n) / d2d_avg;
}

double ratio_deviation(const Position3& s, double phi, const ChannelModel& model) {
  const double ratio = per_capita_ratio(net_throughput(s, model));
  if (std::isinf(ratio)) return kUnusablePosition;
  return std::abs(ratio - phi);
}

double jain_index(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("jain_index: empty rate vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : rates) {
    if (x < 0.0) throw std::invalid_argument("jain_index: negative rate");
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

bool jain_all_zero(std::span<const double> rates) {
  for (double x : rates) {
    if (x != 0.0) return false;
  }
  return true;
}

std::string rate_report_csv_header() { return "seed,scheme,M,N,obstacles,K,x,y,d2d_total,cu_total,net,jain"; }

std::string rate_report_csv_row(const RateReport& report, std::uint64_t seed, const std::string& scheme,
                                const Scenario& scn, const Position3& r) {
  const auto rates = report.all_rates();
  const double jain = rates.empty() ? 1.0 : jain_index(rates);
  return join_csv({std::to_string(seed), scheme, std::to_string(scn.num_pairs()), std::to_string(scn.num_cus()),
                   std::to_string(scn.obstacles.size()), fmt_double(scn.radio.rician_k), fmt_double(r.x()),
                   fmt_double(r.y()), fmt_double(report.d2d_total), fmt_double(report.cu_total),
                   fmt_double(report.net), fmt_double(jain)});
}

}  // namespace uavris
