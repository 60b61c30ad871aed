#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "imf/binary_frame.h"

namespace imf {

// Physical organization of the SRAM macro. The defaults are the fabricated
// 320 x 240 array: 22 banks of 15 columns (lcm(3, 5)), 16 word lines cleared
// per cycle.
struct MacroGeometry {
  int rows = 240;
  int cols = 320;
  int bank_cols = 15;
  int clear_group = 16;

  int n_banks() const noexcept { return (cols + bank_cols - 1) / bank_cols; }

  // A macro sized exactly to a frame, keeping the bank and clear organization.
  static MacroGeometry for_frame(int width, int height);
  void validate() const;  // throws InvalidParams
};

struct CellAddress {
  int row = 0;
  int col = 0;
};

enum class Corner { kTT, kSS, kFF };

std::string_view to_string(Corner corner) noexcept;
Corner parse_corner(std::string_view text);  // "TT" / "SS" / "FF"

// Nominal electrical constants of one operating point.
struct DeviceParams {
  double vdd = 0.7;               // V
  double temperature_c = 27.0;    // degC
  Corner corner = Corner::kTT;
  double c_bl = 140e-15;          // F, bitline parasitic
  double c_wl = 330e-15;          // F, word-line
  double delta_c = 0.0;           // BLB capacitance imbalance, fraction of c_bl
  double v_trip_nominal = 0.21;   // V, latch trip point
  double i_s_nominal = 10e-6;     // A, unit-cell discharge current
  double r_tg = 100.0;            // ohm, column transmission gate

  // 1 - V_trip / VDD.
  double beta() const noexcept { return 1.0 - v_trip_nominal / vdd; }
  void validate() const;  // throws InvalidParams
};

// Mismatch magnitudes sampled per cell.
struct CellVariation {
  double sigma_i_over_mu = 0.0;  // relative std-dev of the cell current
  double sigma_vtrip = 0.0;      // V
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws InvalidParams
};

// Supply / temperature / corner dependence of the device model. The unit-cell
// current follows (VDD - V_T)^2 and the relative current mismatch scales with
// 1 / (VDD - V_T); V_T drops 1 mV/degC and shifts +-50 mV at the SS/FF
// corners. `sigma_ref` and `i_s_ref` are the values at `ref_vdd`, 27 degC, TT.
struct OperatingPoint {
  double vdd = 0.7;
  double temperature_c = 27.0;
  Corner corner = Corner::kTT;
};

struct OverdriveModel {
  double ref_vdd = 0.7;
  double vt0 = 0.35;              // V at 27 degC, TT
  double vt_temp_coeff = -1e-3;   // V / degC
  double corner_shift = 0.05;     // V
  double beta = 0.7;
  double i_s_ref = 10e-6;         // A
  double sigma_ref = 0.133;       // fitted by calibrate_sigma (see README)
  double sigma_vtrip = 0.005;     // V
  double c_bl = 140e-15;
  double c_wl = 330e-15;
  double delta_c = 0.0;
  double r_tg = 100.0;

  double threshold_voltage(double temperature_c, Corner corner) const noexcept;
  double overdrive(const OperatingPoint& op) const noexcept;
  double overdrive_ref() const noexcept { return ref_vdd - vt0; }

  // Throws InvalidParams when the operating point has no overdrive.
  DeviceParams device_at(const OperatingPoint& op) const;
  CellVariation variation_at(const OperatingPoint& op, std::uint64_t seed) const;
};

// Result of one bitline discharge race.
struct PatchOutcome {
  bool bit = false;
  // Time difference between BL and BLB reaching their trip points, seconds.
  // +-infinity for uniform patches (one side carries no current).
  double delta_t = 0.0;
};

// Resolves one shorted patch. `bits`, `currents`, `vtrips` are the cells of
// the patch in any consistent order; `columns` is how many bitline pairs are
// shorted (0 = sqrt of the cell count). Cells storing 0 discharge BL, cells
// storing 1 discharge BLB; each side's trip voltage is the mean trip point of
// the cells that side would flip. The bit is 1 iff delta_t >= 0.
PatchOutcome resolve_patch(std::span<const std::uint8_t> bits,
                           std::span<const double> currents,
                           std::span<const double> vtrips,
                           const DeviceParams& device, int columns = 0);

// Fractions of VDD discharged on BL (rho) and BLB (lambda).
struct RhoLambda {
  double rho = 0.0;
  double lambda = 0.0;
};

struct FilterReport {
  std::int64_t flips_intended = 0;    // bits that changed and had to
  std::int64_t flips_unintended = 0;  // bits that differ from the ideal result
  std::int64_t patches = 0;           // patches resolved, edge patches included
  std::int64_t patch_errors = 0;      // patches that latched the minority value
  std::int64_t cycles = 0;            // precharge + evaluate per row group
  std::vector<RhoLambda> rho_lambda;  // mean over the patches of each row group
  std::vector<std::uint8_t> group_valid;  // any patch of the group latched 1
  bool valid_frame = false;

  double mean_rho_plus_lambda() const noexcept;
};

// Simulated macro: stored bits plus the sampled per-cell device lottery.
class MacroState {
 public:
  const MacroGeometry& geometry() const noexcept { return geometry_; }
  const BinaryFrame& bits() const noexcept { return bits_; }
  double cell_current(int row, int col) const noexcept {
    return current_[cell(row, col)];
  }
  double cell_vtrip(int row, int col) const noexcept {
    return vtrip_[cell(row, col)];
  }
  std::int64_t cycle_count() const noexcept { return cycles_; }

  // Draws a fresh lottery: currents ~ N(i_s, sigma * i_s) truncated to
  // +-4 sigma and > 0, trip points ~ N(v_trip, sigma_vtrip) kept in (0, VDD).
  // Sampling order: all currents row-major, then all trip points, from one
  // mt19937_64 seeded with variation.rng_seed.
  void resample(const DeviceParams& device, const CellVariation& variation);

  // Clears every cell, clear_group word lines per cycle. Returns cycles used.
  std::int64_t clear_memory();
  // Single-bit writes of 1, one cycle each. Throws OutOfBounds.
  std::int64_t write_events(std::span<const CellAddress> pixels);
  // Writes every set pixel of `frame`, placed at the macro origin.
  std::int64_t load_frame(const BinaryFrame& frame);
  // Top-left width x height region of the stored bits.
  BinaryFrame read_frame(int width, int height) const;

  // In-memory non-overlap median filter. Row groups of n word lines are
  // evaluated in 2 cycles each; inside a group every n-column block of a bank
  // is one shorted patch. Requires rows % n == 0 (DimensionMismatch) and
  // n in {3, 5} dividing bank_cols (InvalidParams).
  FilterReport filter_in_memory(int n, const DeviceParams& device);

 private:
  friend MacroState init_macro(const MacroGeometry&, const DeviceParams&,
                               const CellVariation&);

  std::size_t cell(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * geometry_.cols + col;
  }

  MacroGeometry geometry_;
  BinaryFrame bits_;
  std::vector<double> current_;
  std::vector<double> vtrip_;
  std::int64_t cycles_ = 0;
};

// All bits 0, cycle count 0, lottery drawn from variation.rng_seed.
MacroState init_macro(const MacroGeometry& geometry, const DeviceParams& device,
                      const CellVariation& variation);

// Number of complete n x n patches the macro evaluates (8480 for 320 x 240,
// n = 3).
std::int64_t full_patch_count(const MacroGeometry& geometry, int n);

// Gates of the near-memory valid-frame detector sensing `width` bitlines:
// NOR3 = ceil(w/3n) + ceil(w/27n) + ..., NAND3 = ceil(w/9n) + ceil(w/81n) + ...,
// each series stopping at its first single-gate term, plus one DFF.
struct GateCounts {
  int nor3 = 0;
  int nand3 = 0;
  int dff = 0;
};
GateCounts valid_frame_gate_counts(int width, int n);

struct ValidFrameResult {
  bool valid = false;
  GateCounts gates;
};
// OR over the per-row-group bitline trace of a completed filter pass.
ValidFrameResult valid_frame_detect(const FilterReport& report, int width, int n);

// Largest transmission-gate resistance satisfying
// R_tg * C_BL <= margin * C_BL * VDD / (n * i_s), i.e. VDD / (10 n i_s).
double tg_resistance_bound(const DeviceParams& device, int n, double margin = 0.1);
bool check_tg_criterion(const DeviceParams& device, int n, double margin = 0.1);

}  // namespace imf
