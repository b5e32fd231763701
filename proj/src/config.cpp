#include "uavris/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "format.hpp"

namespace uavris {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Thrown by the value parsers; the caller attaches line and key.
struct BadValue {
  std::string what;
};

double to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw BadValue{"expected a number, got '" + s + "'"};
  return v;
}

template <typename Int>
Int to_integer(const std::string& s) {
  Int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw BadValue{"expected an integer, got '" + s + "'"};
  return v;
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw BadValue{"expected a non-empty comma-separated list"};
  return out;
}

Vector2 to_xy(const std::string& s) {
  const auto v = to_list(s);
  if (v.size() != 2) throw BadValue{"expected 'x, y'"};
  return {v[0], v[1]};
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(v[i]);
  }
  return out;
}

std::string xy_text(const Vector2& v) { return fmt_double(v.x()) + ", " + fmt_double(v.y()); }

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

Bounds& ensure(std::optional<Bounds>& b) {
  if (!b) b = Bounds{{kUnset, kUnset}, {kUnset, kUnset}};
  return *b;
}

struct Key {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::optional<std::string>(const ExperimentConfig&)> get;
};

using Registry = std::map<std::string, Key>;

template <typename Field>
void add_number(Registry& reg, const std::string& key, Field field) {
  reg[key] = {[field](ExperimentConfig& c, const std::string& v) {
                auto& ref = field(c);
                using T = std::remove_reference_t<decltype(ref)>;
                if constexpr (std::is_floating_point_v<T>) {
                  ref = to_double(v);
                } else {
                  ref = to_integer<T>(v);
                }
              },
              [field](const ExperimentConfig& c) -> std::optional<std::string> {
                const auto& ref = field(c);
                using T = std::remove_cvref_t<decltype(ref)>;
                if constexpr (std::is_floating_point_v<T>) {
                  return fmt_double(ref);
                } else {
                  return std::to_string(ref);
                }
              }};
}

template <typename Field>
void add_bounds(Registry& reg, const std::string& lo_key, const std::string& hi_key, Field field) {
  reg[lo_key] = {[field](ExperimentConfig& c, const std::string& v) { ensure(field(c)).lo = to_xy(v); },
                 [field](const ExperimentConfig& c) -> std::optional<std::string> {
                   const auto& b = field(c);
                   if (!b) return std::nullopt;
                   return xy_text(b->lo);
                 }};
  reg[hi_key] = {[field](ExperimentConfig& c, const std::string& v) { ensure(field(c)).hi = to_xy(v); },
                 [field](const ExperimentConfig& c) -> std::optional<std::string> {
                   const auto& b = field(c);
                   if (!b) return std::nullopt;
                   return xy_text(b->hi);
                 }};
}

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
#define NUM(key, expr) add_number(r, key, [](auto& c) -> auto& { return c.expr; })
    NUM("generation.num_pairs", generation.num_pairs);
    NUM("generation.num_cus", generation.num_cus);
    NUM("generation.num_obstacles", generation.num_obstacles);
    NUM("generation.region.x_lo", generation.region.x_lo);
    NUM("generation.region.x_hi", generation.region.x_hi);
    NUM("generation.region.y_lo", generation.region.y_lo);
    NUM("generation.region.y_hi", generation.region.y_hi);
    NUM("generation.uav_height", generation.uav_height);
    NUM("generation.user_height", generation.user_height);
    NUM("generation.max_pair_distance", generation.max_pair_distance);
    NUM("generation.obstacle_side_min", generation.obstacle_side_min);
    NUM("generation.obstacle_side_max", generation.obstacle_side_max);
    NUM("generation.obstacle_height_min", generation.obstacle_height_min);
    NUM("generation.obstacle_height_max", generation.obstacle_height_max);
    NUM("generation.max_attempts", generation.max_attempts);

    NUM("radio.tx_power_d2d_dbm", radio.tx_power_d2d_dbm);
    NUM("radio.tx_power_cu_dbm", radio.tx_power_cu_dbm);
    NUM("radio.gain_tx_dbi", radio.gain_tx_dbi);
    NUM("radio.gain_rx_dbi", radio.gain_rx_dbi);
    NUM("radio.gain_uav_dbi", radio.gain_uav_dbi);
    NUM("radio.noise_dbm", radio.noise_dbm);
    NUM("radio.ris_elements", radio.ris_elements);
    NUM("radio.pl_los.alpha_db", radio.pl_los.alpha_db);
    NUM("radio.pl_los.beta", radio.pl_los.beta);
    NUM("radio.pl_nlos.alpha_db", radio.pl_nlos.alpha_db);
    NUM("radio.pl_nlos.beta", radio.pl_nlos.beta);
    NUM("radio.rician_k", radio.rician_k);
    NUM("radio.carrier_ghz", radio.carrier_ghz);

    NUM("optimizer.learning_rate", optimizer.learning_rate);
    NUM("optimizer.tolerance", optimizer.tolerance);
    NUM("optimizer.displacement", optimizer.displacement);
    NUM("optimizer.max_iters", optimizer.max_iters);

    NUM("search.num_directions", search.num_directions);
    NUM("search.step_size", search.step_size);
    NUM("search.max_steps", search.max_steps);

    NUM("trials", trials);
    NUM("base_seed", base_seed);
#undef NUM
    add_bounds(r, "optimizer.r_min", "optimizer.r_max", [](auto& c) -> auto& { return c.optimizer.bounds; });
    add_bounds(r, "search.s_min", "search.s_max", [](auto& c) -> auto& { return c.search.bounds; });

    r["mode"] = {[](ExperimentConfig& c, const std::string& v) {
                   try {
                     c.mode = parse_mode(v);
                   } catch (const ConfigError& e) {
                     throw BadValue{e.what()};
                   }
                 },
                 [](const ExperimentConfig& c) -> std::optional<std::string> { return to_string(c.mode); }};
    r["out_dir"] = {[](ExperimentConfig& c, const std::string& v) { c.out_dir = v; },
                    [](const ExperimentConfig& c) -> std::optional<std::string> { return c.out_dir; }};
    r["sweeps.obstacles"] = {[](ExperimentConfig& c, const std::string& v) { c.sweeps.obstacles = to_list(v); },
                             [](const ExperimentConfig& c) -> std::optional<std::string> {
                               if (c.sweeps.obstacles.empty()) return std::nullopt;
                               return list_text(c.sweeps.obstacles);
                             }};
    r["sweeps.rician_k"] = {[](ExperimentConfig& c, const std::string& v) { c.sweeps.rician_k = to_list(v); },
                            [](const ExperimentConfig& c) -> std::optional<std::string> {
                              if (c.sweeps.rician_k.empty()) return std::nullopt;
                              return list_text(c.sweeps.rician_k);
                            }};
    return r;
  }();
  return reg;
}

std::string canonical_key(const std::string& section, const std::string& key) {
  std::string full = section.empty() ? key : section + "." + key;
  constexpr std::string_view kExperiment = "experiment.";
  if (full.starts_with(kExperiment)) full = full.substr(kExperiment.size());
  return full;
}

}  // namespace

ChannelMode parse_mode(std::string_view text) {
  if (text == "expected" || text == "Expected") return ChannelMode::Expected;
  if (text == "sampled" || text == "Sampled") return ChannelMode::Sampled;
  throw ConfigError("mode must be 'expected' or 'sampled', got '" + std::string(text) + "'");
}

std::string to_string(ChannelMode mode) { return mode == ChannelMode::Expected ? "expected" : "sampled"; }

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  auto check = [&](auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      problems.emplace_back(e.what());
    }
  };
  check([&] { generation.validate(); });
  check([&] { radio.validate(); });
  check([&] { optimizer.validate(); });
  check([&] { search.validate(); });
  if (trials < 1) problems.emplace_back("trials must be >= 1");
  for (double v : sweeps.obstacles) {
    if (!(v >= 0.0) || v != std::floor(v)) problems.emplace_back("sweeps.obstacles entries must be integers >= 0");
  }
  for (double v : sweeps.rician_k) {
    if (!(v >= 0.0)) problems.emplace_back("sweeps.rician_k entries must be >= 0");
  }
  if (out_dir.empty()) problems.emplace_back("out_dir must not be empty");
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  const auto& reg = registry();
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) fail("empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail("missing key");
    const std::string full = canonical_key(section, key);
    const auto it = reg.find(full);
    if (it == reg.end()) fail("unknown key '" + full + "'");
    try {
      it->second.set(cfg, value);
    } catch (const BadValue& e) {
      fail(full + ": " + e.what);
    }
  }
  auto check_bounds = [](const std::optional<Bounds>& b, const char* lo, const char* hi) {
    if (b && (!b->lo.allFinite() || !b->hi.allFinite()))
      throw ConfigError(std::string(lo) + " and " + hi + " must be given together");
  };
  check_bounds(cfg.optimizer.bounds, "optimizer.r_min", "optimizer.r_max");
  check_bounds(cfg.search.bounds, "search.s_min", "search.s_max");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [key, entry] : registry()) {
    if (auto v = entry.get(cfg)) out += key + " = " + *v + "\n";
  }
  return out;
}

}  // namespace uavris
