#include "uavris/channel.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace uavris {

namespace {

std::complex<double> draw_cn01(Rng& rng) {
  // Real and imaginary parts each carry half the power.
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  const double re = half(rng);
  const double im = half(rng);
  return {re, im};
}

constexpr LinkClass kClasses[2] = {LinkClass::LoS, LinkClass::NLoS};

}  // namespace

double path_loss_db(double distance_m, LinkClass cls, const RadioConfig& radio) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("path_loss_db: distance must be > 0");
  const auto& pl = path_loss_params(cls, radio);
  return pl.alpha_db + 10.0 * pl.beta * std::log10(distance_m);
}

double fading_amplitude(LinkClass cls, double rician_k, std::complex<double> w) {
  if (cls == LinkClass::NLoS) return std::abs(w);
  const double k = std::min(rician_k, kMaxRicianK);
  const double specular = std::sqrt(k / (k + 1.0));
  const double scatter = std::sqrt(1.0 / (k + 1.0));
  return std::abs(specular + scatter * w);
}

double sample_fading_amp(LinkClass cls, double rician_k, Rng& rng) {
  return fading_amplitude(cls, rician_k, draw_cn01(rng));
}

bool ChannelState::operator==(const ChannelState& o) const {
  if (mode != o.mode || seed != o.seed || pairs.size() != o.pairs.size() || cus.size() != o.cus.size())
    return false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].to_ris != o.pairs[i].to_ris || pairs[i].from_ris != o.pairs[i].from_ris ||
        pairs[i].kappa != o.pairs[i].kappa)
      return false;
  }
  for (std::size_t i = 0; i < cus.size(); ++i) {
    if (cus[i].link != o.cus[i].link || cus[i].f_sq != o.cus[i].f_sq) return false;
  }
  return true;
}

ChannelModel::ChannelModel(const Scenario& scn, ChannelMode mode, std::uint64_t seed)
    : scn_(&scn), mode_(mode), seed_(seed) {
  const int R = scn.radio.ris_elements;
  const double k = scn.radio.rician_k;
  kappa_.resize(scn.d2d_pairs.size());
  f_sq_.resize(scn.cus.size());

  if (mode == ChannelMode::Expected) {
    const double r = static_cast<double>(R);
    for (auto& row : kappa_) row.fill(r * r);
    for (auto& row : f_sq_) row.fill(1.0);
    return;
  }

  Rng rng = make_rng(seed, RngStream::Fading);
  std::vector<std::complex<double>> h(static_cast<std::size_t>(R));
  std::vector<std::complex<double>> g(static_cast<std::size_t>(R));
  for (auto& row : kappa_) {
    for (auto& w : h) w = draw_cn01(rng);
    for (auto& w : g) w = draw_cn01(rng);
    for (LinkClass a : kClasses) {
      for (LinkClass b : kClasses) {
        double sum = 0.0;
        for (int z = 0; z < R; ++z) sum += fading_amplitude(a, k, h[z]) * fading_amplitude(b, k, g[z]);
        row[combo(a, b)] = sum * sum;
      }
    }
  }
  for (auto& row : f_sq_) {
    const auto w = draw_cn01(rng);
    for (LinkClass a : kClasses) {
      const double amp = fading_amplitude(a, k, w);
      row[static_cast<std::size_t>(a)] = amp * amp;
    }
  }
}

ChannelState ChannelModel::state_at(const Position3& r) const {
  const Scenario& scn = *scn_;
  ChannelState state;
  state.mode = mode_;
  state.seed = seed_;
  state.pairs.reserve(scn.d2d_pairs.size());
  for (std::size_t m = 0; m < scn.d2d_pairs.size(); ++m) {
    const auto& pair = scn.d2d_pairs[m];
    const LinkClass up = classify_link(pair.tx, r, scn.obstacles);
    const LinkClass down = classify_link(r, pair.rx, scn.obstacles);
    state.pairs.push_back({up, down, kappa_[m][combo(up, down)]});
  }
  state.cus.reserve(scn.cus.size());
  for (std::size_t n = 0; n < scn.cus.size(); ++n) {
    const LinkClass link = classify_link(scn.cus[n], r, scn.obstacles);
    state.cus.push_back({link, f_sq_[n][static_cast<std::size_t>(link)]});
  }
  return state;
}

ChannelState build_channel_state(const Scenario& scn, const Position3& r, ChannelMode mode, std::uint64_t seed) {
  return ChannelModel(scn, mode, seed).state_at(r);
}

double eta_m(int pair, const ChannelState& state, const Scenario& scn) {
  const auto& link = state.pairs.at(static_cast<std::size_t>(pair));
  const auto& radio = scn.radio;
  const double gain_db = radio.gain_tx_dbi + radio.gain_rx_dbi;
  const double exponent_db = radio.tx_power_d2d_dbm + gain_db - path_loss_params(link.to_ris, radio).alpha_db -
                             path_loss_params(link.from_ris, radio).alpha_db - 30.0;
  return link.kappa / dbm_to_watt(radio.noise_dbm) * std::pow(10.0, exponent_db / 10.0);
}

double lambda_n(int cu, const ChannelState& state, const Scenario& scn) {
  const auto& link = state.cus.at(static_cast<std::size_t>(cu));
  const auto& radio = scn.radio;
  const double gain_db = radio.gain_tx_dbi + radio.gain_uav_dbi;
  const double exponent_db = radio.tx_power_cu_dbm + gain_db - path_loss_params(link.link, radio).alpha_db - 30.0;
  return link.f_sq / dbm_to_watt(radio.noise_dbm) * std::pow(10.0, exponent_db / 10.0);
}

}  // namespace uavris
