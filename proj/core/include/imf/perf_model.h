#pragma once

#include <cstdint>
#include <string_view>

#include "imf/sram_macro.h"

namespace imf {

struct WorkloadParams {
  int width = 240;
  int height = 180;
  int n = 3;
  double alpha = 0.015;                // fraction of pixels flipped by the filter
  int beta_t = 16;                     // timestamp bits per pixel (NN-filt)
  double gamma = 0.127;                // events per pixel per frame
  double empty_frame_fraction = 0.51;

  std::int64_t pixels() const noexcept {
    return static_cast<std::int64_t>(width) * static_cast<std::int64_t>(height);
  }
  void validate() const;  // throws InvalidParams
};

struct EnergyConstants {
  double e_read = 0.916e-12;       // J/bit at ref_vdd
  double e_write = 6e-12;          // J/bit at ref_vdd
  double ref_vdd = 1.0;            // V
  double cap_ratio = 89.0 / 140.0; // baseline cell BL capacitance vs IMC cell
  double e_imc_pixel = 39e-15;     // J/pixel, measured at 0.7 V
  double dnn_energy = 1076.6e-9;   // J/frame

  void validate() const;  // throws InvalidParams
};

enum class FilterMethod { kNNFilt, kMedianFilter, kNomf, kNomfImc };
enum class DigitalArch { kMF, kMFPR, kMFRB, kMFPRRB, kIMF };
enum class EnergyArch { kMF, kMFRB, kImcNomf };

std::string_view to_string(FilterMethod m) noexcept;
std::string_view to_string(DigitalArch a) noexcept;
std::string_view to_string(EnergyArch a) noexcept;

struct FilterCost {
  std::int64_t reads = 0;
  std::int64_t writes = 0;
  std::int64_t ops = 0;
  std::int64_t sram_cells = 0;
};

// Memory reads / writes, processor operations and SRAM cells to denoise one
// W x H image. Fractional counts round up.
//   NN-filt      b*g*n^2*M   b*g*M   g*n^2*M   b*M
//   median       n^2*M       M       n^2*M     2M
//   NOMF         M           M       M         M
//   NOMF + IMC   M/n         a*M     0         M
FilterCost op_counts(FilterMethod method, const WorkloadParams& params);

// Clock cycles per frame:
//   MF, MFRB  (n^2 + 1) W H    MFPR  2 n H    MFPRRB  2 H    IMF  2 H / n
// IMF requires H % n == 0 (DimensionMismatch).
std::int64_t digital_latency(DigitalArch arch, int width, int height, int n);

// Denoising energy per frame, joules. The digital baselines scale the 1 V
// per-bit energies by (vdd / ref_vdd)^2 and by the capacitance ratio;
// row buffering saves 2n of the n^2 reads per pixel.
double baseline_energy(EnergyArch arch, const WorkloadParams& params,
                       const EnergyConstants& constants, double vdd);

struct CurrentBreakdown {
  double i_ch = 0.0;
  double i_imf = 0.0;
  double i_leakage = 0.0;
  double i_bitflip = 0.0;
  double i_total = 0.0;
};

inline constexpr double kBitflipFractionOfCharge = 0.0068;

// I_ch = ((rho + lambda) N_col C_BL + n C_WL) VDD f / 2; I_bitflip is 0.68 %
// of I_ch; I_total is the sum of all four terms.
CurrentBreakdown imc_current(const WorkloadParams& params, const DeviceParams& device,
                             double f_hz, double rho_lambda_mean, double i_imf,
                             double i_leakage = 0.0, int n_col = 320);

struct RhoLambdaBound {
  double lower = 1.0;
  double upper = 1.0;
};
// 1 <= rho + lambda <= 1 + beta * min(k, n^2 - k) / max(k, n^2 - k).
RhoLambdaBound rho_lambda_bound(int k, int n, double beta);

struct Throughput {
  double gops = 0.0;
  double tops_per_w = 0.0;
};
// Two operations per pixel; cols * n pixels per evaluation.
Throughput throughput_efficiency(double f_hz, int n, int cols, double energy_per_pixel);

struct SystemEnergy {
  double average = 0.0;   // J/frame with empty-frame gating
  double baseline = 0.0;  // J/frame running the DNN on every frame
  double savings = 0.0;   // 1 - average / baseline
};
SystemEnergy system_energy_per_frame(const WorkloadParams& params,
                                     const EnergyConstants& constants,
                                     double denoise_energy);

}  // namespace imf
