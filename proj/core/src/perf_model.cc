#include "imf/perf_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "imf/error.h"

namespace imf {
namespace {

// Rounds up, ignoring floating-point residue such as 2.0000000000000004.
std::int64_t count_up(double value) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(value));
}

}  // namespace

void WorkloadParams::validate() const {
  if (width <= 0 || height <= 0) throw InvalidParams("image dimensions must be positive");
  if (n <= 0) throw InvalidParams("kernel side must be positive");
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(alpha) || !unit(gamma) || !unit(empty_frame_fraction)) {
    throw InvalidParams("alpha, gamma and empty_frame_fraction must lie in [0, 1]");
  }
  if (beta_t < 1) throw InvalidParams("beta_t must be >= 1");
}

void EnergyConstants::validate() const {
  if (!(e_read > 0) || !(e_write > 0) || !(ref_vdd > 0) || !(cap_ratio > 0) ||
      !(e_imc_pixel > 0) || !(dnn_energy > 0)) {
    throw InvalidParams("energy constants must be positive");
  }
}

std::string_view to_string(FilterMethod m) noexcept {
  switch (m) {
    case FilterMethod::kNNFilt:
      return "NN-filt";
    case FilterMethod::kMedianFilter:
      return "MedianFilter";
    case FilterMethod::kNomf:
      return "NOMF";
    case FilterMethod::kNomfImc:
      return "NOMF+IMC";
  }
  return "?";
}

std::string_view to_string(DigitalArch a) noexcept {
  switch (a) {
    case DigitalArch::kMF:
      return "MF";
    case DigitalArch::kMFPR:
      return "MFPR";
    case DigitalArch::kMFRB:
      return "MFRB";
    case DigitalArch::kMFPRRB:
      return "MFPRRB";
    case DigitalArch::kIMF:
      return "IMF";
  }
  return "?";
}

std::string_view to_string(EnergyArch a) noexcept {
  switch (a) {
    case EnergyArch::kMF:
      return "MF";
    case EnergyArch::kMFRB:
      return "MFRB";
    case EnergyArch::kImcNomf:
      return "IMC+NOMF";
  }
  return "?";
}

FilterCost op_counts(FilterMethod method, const WorkloadParams& params) {
  params.validate();
  const double m = static_cast<double>(params.pixels());
  const double n2 = static_cast<double>(params.n) * params.n;
  const double bt = params.beta_t;
  const double g = params.gamma;
  switch (method) {
    case FilterMethod::kNNFilt:
      return {count_up(bt * g * n2 * m), count_up(bt * g * m), count_up(g * n2 * m),
              count_up(bt * m)};
    case FilterMethod::kMedianFilter:
      return {count_up(n2 * m), count_up(m), count_up(n2 * m), count_up(2 * m)};
    case FilterMethod::kNomf:
      return {count_up(m), count_up(m), count_up(m), count_up(m)};
    case FilterMethod::kNomfImc:
      return {count_up(m / params.n), count_up(params.alpha * m), 0, count_up(m)};
  }
  return {};
}

std::int64_t digital_latency(DigitalArch arch, int width, int height, int n) {
  if (width <= 0 || height <= 0 || n <= 0) {
    throw InvalidParams("latency needs positive dimensions");
  }
  const std::int64_t w = width;
  const std::int64_t h = height;
  switch (arch) {
    case DigitalArch::kMF:
    case DigitalArch::kMFRB:
      return (static_cast<std::int64_t>(n) * n + 1) * w * h;
    case DigitalArch::kMFPR:
      return 2 * n * h;
    case DigitalArch::kMFPRRB:
      return 2 * h;
    case DigitalArch::kIMF:
      if (height % n != 0) {
        throw DimensionMismatch("IMF latency needs H divisible by n");
      }
      return 2 * h / n;
  }
  return 0;
}

double baseline_energy(EnergyArch arch, const WorkloadParams& params,
                       const EnergyConstants& constants, double vdd) {
  params.validate();
  constants.validate();
  if (!(vdd > 0.0)) throw InvalidParams("vdd must be positive");
  const double m = static_cast<double>(params.pixels());
  const double n = params.n;
  const double scale = (vdd / constants.ref_vdd) * (vdd / constants.ref_vdd) * constants.cap_ratio;
  switch (arch) {
    case EnergyArch::kMF:
      return m * (n * n * constants.e_read + constants.e_write) * scale;
    case EnergyArch::kMFRB:
      return m * ((n * n - 2 * n) * constants.e_read + constants.e_write) * scale;
    case EnergyArch::kImcNomf:
      return m * constants.e_imc_pixel;
  }
  return 0.0;
}

CurrentBreakdown imc_current(const WorkloadParams& params, const DeviceParams& device,
                             double f_hz, double rho_lambda_mean, double i_imf,
                             double i_leakage, int n_col) {
  if (!(f_hz > 0.0)) throw InvalidParams("frequency must be positive");
  if (n_col <= 0) throw InvalidParams("column count must be positive");
  CurrentBreakdown c;
  c.i_ch = (rho_lambda_mean * n_col * device.c_bl + params.n * device.c_wl) * device.vdd *
           f_hz / 2.0;
  c.i_imf = i_imf;
  c.i_leakage = i_leakage;
  c.i_bitflip = kBitflipFractionOfCharge * c.i_ch;
  c.i_total = c.i_bitflip + c.i_leakage + c.i_imf + c.i_ch;
  return c;
}

RhoLambdaBound rho_lambda_bound(int k, int n, double beta) {
  const int cells = n * n;
  if (n <= 0 || k < 0 || k > cells) {
    throw InvalidCount("k = " + std::to_string(k) + " outside [0, n^2]");
  }
  if (k == 0 || k == cells) return {1.0, 1.0};
  const double ratio = static_cast<double>(std::min(k, cells - k)) /
                       static_cast<double>(std::max(k, cells - k));
  return {1.0, 1.0 + beta * ratio};
}

Throughput throughput_efficiency(double f_hz, int n, int cols, double energy_per_pixel) {
  if (!(f_hz > 0.0) || n <= 0 || cols <= 0 || !(energy_per_pixel > 0.0)) {
    throw InvalidParams("throughput needs positive inputs");
  }
  Throughput t;
  t.gops = 2.0 * cols * n * f_hz / 1e9;
  t.tops_per_w = 2.0 / energy_per_pixel / 1e12;
  return t;
}

SystemEnergy system_energy_per_frame(const WorkloadParams& params,
                                     const EnergyConstants& constants,
                                     double denoise_energy) {
  params.validate();
  constants.validate();
  SystemEnergy s;
  s.baseline = constants.dnn_energy;
  s.average = denoise_energy + (1.0 - params.empty_frame_fraction) * constants.dnn_energy;
  s.savings = 1.0 - s.average / s.baseline;
  return s;
}

}  // namespace imf
