#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "imf/error.h"
#include "imf/frames.h"
#include "imf/perf_model.h"
#include "imf/pipeline.h"
#include "imf/sram_macro.h"
#include "imf/synthetic.h"

namespace imf::cli {

// Unknown key or unparsable value in a config file or override.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& reason);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  FrameConfig frame;
  OverdriveModel model;
  OperatingPoint op;
  MacroGeometry macro;
  int n = 3;

  WorkloadParams workload;
  EnergyConstants energy;
  double clock_hz = 70e6;
  // Operating point of the charge-current estimate.
  double current_vdd = 1.2;
  double current_f_hz = 48e6;
  double rho_lambda_mean = 1.01;

  TrackerConfig tracker;
  SyntheticConfig synthetic;

  int trials = 20;
  double calib_target_ber = 1.5e-4;
  int calib_frames = 300;
  int calib_iterations = 12;

  std::uint64_t seed = 1;
  std::filesystem::path out = "out";

  DeviceParams device() const { return model.device_at(op); }
  CellVariation variation(std::uint64_t seed_offset = 0) const {
    return model.variation_at(op, seed + seed_offset);
  }

  // Applies one `key = value` setting. Throws ConfigError.
  void set(std::string_view key, std::string_view value);
  void validate() const;
};

// Flat `key = value` lines; '#' starts a comment. Throws ConfigError naming
// the key (or "line N" for lines without '=').
void apply_config(RunConfig& cfg, std::istream& in);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

// Every recognised key, in the order they are documented.
std::vector<std::string> config_keys();

}  // namespace imf::cli
