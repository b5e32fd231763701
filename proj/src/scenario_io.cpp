#include "uavris/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

// Position3 is an Eigen type, so ADL would never look in uavris.
template <>
struct nlohmann::adl_serializer<uavris::Position3> {
  static void to_json(json& j, const uavris::Position3& p) { j = json{{"x", p.x()}, {"y", p.y()}, {"z", p.z()}}; }
  static void from_json(const json& j, uavris::Position3& p) {
    p = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
  }
};

namespace uavris {

using nlohmann::json;

void to_json(json& j, const D2DPair& pair) { j = json{{"tx", pair.tx}, {"rx", pair.rx}}; }
void from_json(const json& j, D2DPair& pair) {
  j.at("tx").get_to(pair.tx);
  j.at("rx").get_to(pair.rx);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Obstacle, x_min, x_max, y_min, y_max, height)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Region, x_lo, x_hi, y_lo, y_hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PathLossParams, alpha_db, beta)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RadioConfig, tx_power_d2d_dbm, tx_power_cu_dbm, gain_tx_dbi, gain_rx_dbi,
                                   gain_uav_dbi, noise_dbm, ris_elements, pl_los, pl_nlos, rician_k, carrier_ghz)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Scenario, d2d_pairs, cus, obstacles, region, uav_height, radio)

std::string scenario_to_json(const Scenario& scn, int indent) { return json(scn).dump(indent); }

Scenario scenario_from_json(std::string_view text) {
  Scenario scn;
  try {
    json::parse(text).get_to(scn);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  scn.validate();
  return scn;
}

void save_scenario(const Scenario& scn, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario to '" + path.string() + "'");
  out << scenario_to_json(scn) << '\n';
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace uavris
