#include "config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <string>

#include "imf/error.h"
#include "imf/filters.h"

namespace imf::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "not a number: '" + std::string(text) + "'");
  }
  return value;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

template <typename T, typename Field>
Setter number(Field field) {
  return [field](RunConfig& c, std::string_view key, std::string_view v) {
    field(c) = parse_number<T>(key, v);
  };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"t_f_us", number<std::int64_t>([](RunConfig& c) -> auto& { return c.frame.t_f_us; })},
      {"sensor_width", number<int>([](RunConfig& c) -> auto& { return c.frame.sensor_width; })},
      {"sensor_height", number<int>([](RunConfig& c) -> auto& { return c.frame.sensor_height; })},

      {"vdd", number<double>([](RunConfig& c) -> auto& { return c.op.vdd; })},
      {"temperature_c", number<double>([](RunConfig& c) -> auto& { return c.op.temperature_c; })},
      {"corner",
       [](RunConfig& c, std::string_view key, std::string_view v) {
         try {
           c.op.corner = parse_corner(v);
         } catch (const Error& e) {
           throw ConfigError(std::string(key), e.what());
         }
       }},
      {"ref_vdd", number<double>([](RunConfig& c) -> auto& { return c.model.ref_vdd; })},
      {"vt0", number<double>([](RunConfig& c) -> auto& { return c.model.vt0; })},
      {"vt_temp_coeff", number<double>([](RunConfig& c) -> auto& { return c.model.vt_temp_coeff; })},
      {"corner_shift", number<double>([](RunConfig& c) -> auto& { return c.model.corner_shift; })},
      {"beta", number<double>([](RunConfig& c) -> auto& { return c.model.beta; })},
      {"i_s_ref", number<double>([](RunConfig& c) -> auto& { return c.model.i_s_ref; })},
      {"sigma_ref", number<double>([](RunConfig& c) -> auto& { return c.model.sigma_ref; })},
      {"sigma_vtrip", number<double>([](RunConfig& c) -> auto& { return c.model.sigma_vtrip; })},
      {"c_bl", number<double>([](RunConfig& c) -> auto& { return c.model.c_bl; })},
      {"c_wl", number<double>([](RunConfig& c) -> auto& { return c.model.c_wl; })},
      {"delta_c", number<double>([](RunConfig& c) -> auto& { return c.model.delta_c; })},
      {"r_tg", number<double>([](RunConfig& c) -> auto& { return c.model.r_tg; })},

      {"macro_rows", number<int>([](RunConfig& c) -> auto& { return c.macro.rows; })},
      {"macro_cols", number<int>([](RunConfig& c) -> auto& { return c.macro.cols; })},
      {"bank_cols", number<int>([](RunConfig& c) -> auto& { return c.macro.bank_cols; })},
      {"clear_group", number<int>([](RunConfig& c) -> auto& { return c.macro.clear_group; })},
      {"n", number<int>([](RunConfig& c) -> auto& { return c.n; })},

      {"alpha", number<double>([](RunConfig& c) -> auto& { return c.workload.alpha; })},
      {"beta_t", number<int>([](RunConfig& c) -> auto& { return c.workload.beta_t; })},
      {"gamma", number<double>([](RunConfig& c) -> auto& { return c.workload.gamma; })},
      {"empty_frame_fraction",
       number<double>([](RunConfig& c) -> auto& { return c.workload.empty_frame_fraction; })},
      {"e_read", number<double>([](RunConfig& c) -> auto& { return c.energy.e_read; })},
      {"e_write", number<double>([](RunConfig& c) -> auto& { return c.energy.e_write; })},
      {"e_imc_pixel", number<double>([](RunConfig& c) -> auto& { return c.energy.e_imc_pixel; })},
      {"dnn_energy", number<double>([](RunConfig& c) -> auto& { return c.energy.dnn_energy; })},
      {"clock_hz", number<double>([](RunConfig& c) -> auto& { return c.clock_hz; })},
      {"current_vdd", number<double>([](RunConfig& c) -> auto& { return c.current_vdd; })},
      {"current_f_hz", number<double>([](RunConfig& c) -> auto& { return c.current_f_hz; })},
      {"rho_lambda_mean", number<double>([](RunConfig& c) -> auto& { return c.rho_lambda_mean; })},

      {"iou_match_threshold",
       number<double>([](RunConfig& c) -> auto& { return c.tracker.iou_match_threshold; })},
      {"confirm_hits", number<int>([](RunConfig& c) -> auto& { return c.tracker.confirm_hits; })},
      {"kill_misses", number<int>([](RunConfig& c) -> auto& { return c.tracker.kill_misses; })},
      {"rescale_a", number<int>([](RunConfig& c) -> auto& { return c.tracker.rescale_a; })},
      {"rescale_b", number<int>([](RunConfig& c) -> auto& { return c.tracker.rescale_b; })},
      {"min_component_area",
       number<int>([](RunConfig& c) -> auto& { return c.tracker.min_component_area; })},
      {"connectivity",
       [](RunConfig& c, std::string_view key, std::string_view v) {
         const int k = parse_number<int>(key, v);
         if (k != 4 && k != 8) throw ConfigError(std::string(key), "must be 4 or 8");
         c.tracker.connectivity = k == 4 ? Connectivity::kFour : Connectivity::kEight;
       }},

      {"frames", number<int>([](RunConfig& c) -> auto& { return c.synthetic.frames; })},
      {"location", number<int>([](RunConfig& c) -> auto& { return c.synthetic.location; })},
      {"noise_rate", number<double>([](RunConfig& c) -> auto& { return c.synthetic.noise_rate; })},
      {"fill_prob", number<double>([](RunConfig& c) -> auto& { return c.synthetic.fill_prob; })},
      {"spawn_prob", number<double>([](RunConfig& c) -> auto& { return c.synthetic.spawn_prob; })},
      {"max_objects", number<int>([](RunConfig& c) -> auto& { return c.synthetic.max_objects; })},
      {"min_speed", number<double>([](RunConfig& c) -> auto& { return c.synthetic.min_speed; })},
      {"max_speed", number<double>([](RunConfig& c) -> auto& { return c.synthetic.max_speed; })},

      {"trials", number<int>([](RunConfig& c) -> auto& { return c.trials; })},
      {"calib_target_ber", number<double>([](RunConfig& c) -> auto& { return c.calib_target_ber; })},
      {"calib_frames", number<int>([](RunConfig& c) -> auto& { return c.calib_frames; })},
      {"calib_iterations", number<int>([](RunConfig& c) -> auto& { return c.calib_iterations; })},

      {"seed", number<std::uint64_t>([](RunConfig& c) -> auto& { return c.seed; })},
      {"out",
       [](RunConfig& c, std::string_view key, std::string_view v) {
         if (v.empty()) throw ConfigError(std::string(key), "empty path");
         c.out = std::string(v);
       }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& reason)
    : Error("config key '" + key + "': " + reason), key_(std::move(key)) {}

void RunConfig::set(std::string_view key, std::string_view value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(*this, key, trim(value));
      return;
    }
  }
  throw ConfigError(std::string(key), "unknown key");
}

void RunConfig::validate() const {
  frame.validate();
  macro.validate();
  workload.validate();
  energy.validate();
  tracker.validate();
  synthetic.validate();
  KernelSpec{n}.validate();
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  if (calib_frames < 1 || calib_iterations < 1) {
    throw InvalidParams("calibration needs frames and iterations");
  }
  if (!(clock_hz > 0.0) || !(current_f_hz > 0.0) || !(current_vdd > 0.0)) {
    throw InvalidParams("clock frequencies and current_vdd must be positive");
  }
  if (rho_lambda_mean < 1.0) throw InvalidParams("rho_lambda_mean must be >= 1");
  if (synthetic.width != frame.sensor_width || synthetic.height != frame.sensor_height) {
    throw InvalidParams("synthetic frame size must match the sensor");
  }
}

void apply_config(RunConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    }
    cfg.set(trim(body.substr(0, eq)), body.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  apply_config(cfg, in);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& entry : setters()) keys.push_back(entry.first);
  return keys;
}

}  // namespace imf::cli
