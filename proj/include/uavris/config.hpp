#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavris/channel.hpp"
#include "uavris/placement.hpp"
#include "uavris/radio_config.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

/// Malformed or out-of-range experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> obstacles;
  std::vector<double> rician_k;
  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  GenerationConfig generation;
  RadioConfig radio;
  OptimizerConfig optimizer;
  SearchConfig search;
  int trials = 20;
  std::uint64_t base_seed = 1;
  ChannelMode mode = ChannelMode::Expected;
  SweepSpec sweeps;
  std::string out_dir = "out";

  /// Throws ConfigError listing every violated key.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the `[section]` / `key = value` format. Keys may also be written
/// fully dotted (`radio.ris_elements = 250`) outside any section. Lists are
/// comma separated; `#` starts a comment. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses `path`; ConfigError if it cannot be opened.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every key in canonical dotted form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& cfg);

ChannelMode parse_mode(std::string_view text);
std::string to_string(ChannelMode mode);

}  // namespace uavris
