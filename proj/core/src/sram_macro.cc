#include "imf/sram_macro.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cell_sampler.h"
#include "imf/error.h"

namespace imf {
namespace {

constexpr int kMaxPatchCells = 25;

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void check_filter_side(const MacroGeometry& geometry, int n) {
  if (n != 3 && n != 5) {
    throw InvalidParams("in-memory filter supports n = 3 or 5, got " +
                        std::to_string(n));
  }
  if (geometry.bank_cols % n != 0) {
    throw InvalidParams("bank width " + std::to_string(geometry.bank_cols) +
                        " is not a multiple of n = " + std::to_string(n));
  }
  if (geometry.rows % n != 0) {
    throw DimensionMismatch(std::to_string(geometry.rows) +
                            " rows are not divisible by n = " + std::to_string(n));
  }
}

}  // namespace

MacroGeometry MacroGeometry::for_frame(int width, int height) {
  MacroGeometry g;
  g.cols = width;
  g.rows = height;
  g.validate();
  return g;
}

void MacroGeometry::validate() const {
  if (rows <= 0 || cols <= 0) throw InvalidParams("macro dimensions must be positive");
  if (bank_cols <= 0) throw InvalidParams("bank width must be positive");
  if (clear_group <= 0) throw InvalidParams("clear group must be positive");
}

std::string_view to_string(Corner corner) noexcept {
  switch (corner) {
    case Corner::kSS:
      return "SS";
    case Corner::kFF:
      return "FF";
    case Corner::kTT:
      break;
  }
  return "TT";
}

Corner parse_corner(std::string_view text) {
  if (text == "TT" || text == "tt") return Corner::kTT;
  if (text == "SS" || text == "ss") return Corner::kSS;
  if (text == "FF" || text == "ff") return Corner::kFF;
  throw InvalidParams("unknown process corner '" + std::string(text) + "'");
}

void DeviceParams::validate() const {
  if (!(vdd > 0.0)) throw InvalidParams("vdd must be positive");
  if (!(v_trip_nominal > 0.0 && v_trip_nominal < vdd)) {
    throw InvalidParams("trip point must lie in (0, vdd)");
  }
  if (!(std::abs(delta_c) < 1.0)) throw InvalidParams("|delta_c| must be < 1");
  if (!(c_bl > 0.0) || !(c_wl > 0.0)) {
    throw InvalidParams("capacitances must be positive");
  }
  if (!(i_s_nominal > 0.0)) throw InvalidParams("cell current must be positive");
  if (r_tg < 0.0) throw InvalidParams("transmission-gate resistance must be >= 0");
}

void CellVariation::validate() const {
  if (!(sigma_i_over_mu >= 0.0) || !(sigma_vtrip >= 0.0)) {
    throw InvalidParams("variation magnitudes must be non-negative");
  }
}

double OverdriveModel::threshold_voltage(double temperature_c,
                                         Corner corner) const noexcept {
  double vt = vt0 + vt_temp_coeff * (temperature_c - 27.0);
  if (corner == Corner::kSS) vt += corner_shift;
  if (corner == Corner::kFF) vt -= corner_shift;
  return vt;
}

double OverdriveModel::overdrive(const OperatingPoint& op) const noexcept {
  return op.vdd - threshold_voltage(op.temperature_c, op.corner);
}

DeviceParams OverdriveModel::device_at(const OperatingPoint& op) const {
  const double ov = overdrive(op);
  if (!(ov > 0.0) || !(overdrive_ref() > 0.0)) {
    throw InvalidParams("operating point has no gate overdrive");
  }
  DeviceParams d;
  d.vdd = op.vdd;
  d.temperature_c = op.temperature_c;
  d.corner = op.corner;
  d.c_bl = c_bl;
  d.c_wl = c_wl;
  d.delta_c = delta_c;
  d.v_trip_nominal = (1.0 - beta) * op.vdd;
  const double ratio = ov / overdrive_ref();
  d.i_s_nominal = i_s_ref * ratio * ratio;
  d.r_tg = r_tg;
  d.validate();
  return d;
}

CellVariation OverdriveModel::variation_at(const OperatingPoint& op,
                                           std::uint64_t seed) const {
  const double ov = overdrive(op);
  if (!(ov > 0.0)) throw InvalidParams("operating point has no gate overdrive");
  CellVariation v;
  v.sigma_i_over_mu = sigma_ref * overdrive_ref() / ov;
  v.sigma_vtrip = sigma_vtrip;
  v.rng_seed = seed;
  return v;
}

PatchOutcome resolve_patch(std::span<const std::uint8_t> bits,
                           std::span<const double> currents,
                           std::span<const double> vtrips,
                           const DeviceParams& device, int columns) {
  if (bits.size() != currents.size() || bits.size() != vtrips.size() ||
      bits.empty()) {
    throw DimensionMismatch("resolve_patch: mismatched cell arrays");
  }
  if (columns <= 0) {
    columns = static_cast<int>(std::lround(std::sqrt(static_cast<double>(bits.size()))));
  }
  double i_bl = 0.0;   // cells storing 0 discharge BL
  double i_blb = 0.0;  // cells storing 1 discharge BLB
  double trip_ones = 0.0;
  double trip_zeros = 0.0;
  int ones = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      i_blb += currents[i];
      trip_ones += vtrips[i];
      ++ones;
    } else {
      i_bl += currents[i];
      trip_zeros += vtrips[i];
    }
  }
  const int zeros = static_cast<int>(bits.size()) - ones;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (ones == 0) return {false, -kInf};
  if (zeros == 0) return {true, kInf};

  // BL reaching its trip point flips the cells holding 1, and vice versa.
  const double v_bl_trip = trip_ones / ones;
  const double v_blb_trip = trip_zeros / zeros;
  const double c_bl = device.c_bl;
  const double c_blb = device.c_bl * (1.0 + device.delta_c);
  const double delta_t =
      columns * (c_bl * v_bl_trip / i_bl - c_blb * v_blb_trip / i_blb);
  return {delta_t >= 0.0, delta_t};
}

double FilterReport::mean_rho_plus_lambda() const noexcept {
  if (rho_lambda.empty()) return 0.0;
  double sum = 0.0;
  for (const RhoLambda& rl : rho_lambda) sum += rl.rho + rl.lambda;
  return sum / static_cast<double>(rho_lambda.size());
}

MacroState init_macro(const MacroGeometry& geometry, const DeviceParams& device,
                      const CellVariation& variation) {
  geometry.validate();
  MacroState state;
  state.geometry_ = geometry;
  state.bits_ = BinaryFrame(geometry.cols, geometry.rows);
  state.resample(device, variation);
  return state;
}

void MacroState::resample(const DeviceParams& device, const CellVariation& variation) {
  device.validate();
  variation.validate();
  const std::size_t cells =
      static_cast<std::size_t>(geometry_.rows) * static_cast<std::size_t>(geometry_.cols);
  current_.resize(cells);
  vtrip_.resize(cells);
  detail::CellSampler sampler(variation.rng_seed);
  for (double& c : current_) {
    c = sampler.current(device.i_s_nominal, variation.sigma_i_over_mu);
  }
  for (double& v : vtrip_) {
    v = sampler.trip_point(device.v_trip_nominal, variation.sigma_vtrip, device.vdd);
  }
}

std::int64_t MacroState::clear_memory() {
  bits_.clear();
  const std::int64_t used = ceil_div(geometry_.rows, geometry_.clear_group);
  cycles_ += used;
  return used;
}

std::int64_t MacroState::write_events(std::span<const CellAddress> pixels) {
  for (const CellAddress& p : pixels) {
    if (p.row < 0 || p.col < 0 || p.row >= geometry_.rows || p.col >= geometry_.cols) {
      throw OutOfBounds("write to (" + std::to_string(p.row) + "," +
                        std::to_string(p.col) + ") outside the macro");
    }
  }
  for (const CellAddress& p : pixels) bits_.set(p.col, p.row);
  const auto used = static_cast<std::int64_t>(pixels.size());
  cycles_ += used;
  return used;
}

std::int64_t MacroState::load_frame(const BinaryFrame& frame) {
  if (frame.width() > geometry_.cols || frame.height() > geometry_.rows) {
    throw OutOfBounds("frame larger than the macro");
  }
  std::vector<CellAddress> pixels;
  pixels.reserve(frame.popcount());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      if (frame.get(x, y)) pixels.push_back({y, x});
    }
  }
  return write_events(pixels);
}

BinaryFrame MacroState::read_frame(int width, int height) const {
  if (width > geometry_.cols || height > geometry_.rows) {
    throw OutOfBounds("read-out region larger than the macro");
  }
  BinaryFrame out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (bits_.get(x, y)) out.set(x, y);
    }
  }
  return out;
}

FilterReport MacroState::filter_in_memory(int n, const DeviceParams& device) {
  check_filter_side(geometry_, n);
  device.validate();
  const double beta = device.beta();
  const int groups = geometry_.rows / n;

  FilterReport report;
  report.rho_lambda.reserve(static_cast<std::size_t>(groups));
  report.group_valid.reserve(static_cast<std::size_t>(groups));

  std::array<std::uint8_t, kMaxPatchCells> bits{};
  std::array<double, kMaxPatchCells> currents{};
  std::array<double, kMaxPatchCells> vtrips{};

  for (int g = 0; g < groups; ++g) {
    const int y0 = g * n;
    double rho_sum = 0.0;
    double lambda_sum = 0.0;
    int group_patches = 0;
    bool any_one = false;

    // Banks are multiples of n wide, so tiling from column 0 never straddles
    // a bank boundary; only the last bank can leave a narrower edge patch.
    for (int x0 = 0; x0 < geometry_.cols; x0 += n) {
      const int width = std::min(n, geometry_.cols - x0);
      int cells = 0;
      int ones = 0;
      for (int y = y0; y < y0 + n; ++y) {
        for (int x = x0; x < x0 + width; ++x) {
          const bool b = bits_.get(x, y);
          bits[cells] = b ? 1 : 0;
          currents[cells] = current_[cell(y, x)];
          vtrips[cells] = vtrip_[cell(y, x)];
          ones += b ? 1 : 0;
          ++cells;
        }
      }
      const bool ideal = 2 * ones >= cells;
      const PatchOutcome outcome =
          resolve_patch(std::span(bits.data(), cells), std::span(currents.data(), cells),
                        std::span(vtrips.data(), cells), device, width);

      if (outcome.bit != ideal) {
        ++report.patch_errors;
        report.flips_unintended += cells;
      } else {
        report.flips_intended += ideal ? cells - ones : ones;
      }
      for (int y = y0; y < y0 + n; ++y) bits_.fill_run(y, x0, width, outcome.bit);

      if (ones == 0) {
        rho_sum += 1.0;
      } else if (ones == cells) {
        lambda_sum += 1.0;
      } else {
        const double ratio = static_cast<double>(std::min(ones, cells - ones)) /
                             static_cast<double>(std::max(ones, cells - ones));
        if (outcome.bit) {
          lambda_sum += 1.0;
          rho_sum += beta * ratio;
        } else {
          rho_sum += 1.0;
          lambda_sum += beta * ratio;
        }
      }
      any_one = any_one || outcome.bit;
      ++group_patches;
      ++report.patches;
    }

    report.rho_lambda.push_back({rho_sum / group_patches, lambda_sum / group_patches});
    report.group_valid.push_back(any_one ? 1 : 0);
    report.valid_frame = report.valid_frame || any_one;
  }

  report.cycles = 2 * static_cast<std::int64_t>(groups);
  cycles_ += report.cycles;
  return report;
}

std::int64_t full_patch_count(const MacroGeometry& geometry, int n) {
  if (n <= 0) throw InvalidParams("kernel side must be positive");
  return static_cast<std::int64_t>(geometry.rows / n) * (geometry.cols / n);
}

GateCounts valid_frame_gate_counts(int width, int n) {
  if (width <= 0 || n <= 0) throw InvalidParams("width and n must be positive");
  auto series = [&](long long denom) {
    int total = 0;
    while (true) {
      const long long term = (width + denom - 1) / denom;
      total += static_cast<int>(term);
      if (term <= 1) break;
      denom *= 9;
    }
    return total;
  };
  GateCounts g;
  g.nor3 = series(3LL * n);
  g.nand3 = series(9LL * n);
  g.dff = 1;
  return g;
}

ValidFrameResult valid_frame_detect(const FilterReport& report, int width, int n) {
  ValidFrameResult result;
  result.valid = std::any_of(report.group_valid.begin(), report.group_valid.end(),
                             [](std::uint8_t v) { return v != 0; });
  result.gates = valid_frame_gate_counts(width, n);
  return result;
}

double tg_resistance_bound(const DeviceParams& device, int n, double margin) {
  if (!(device.vdd > 0.0) || !(device.i_s_nominal > 0.0) || n <= 0) {
    throw InvalidParams("tg criterion needs positive vdd, i_s and n");
  }
  return margin * device.vdd / (n * device.i_s_nominal);
}

bool check_tg_criterion(const DeviceParams& device, int n, double margin) {
  return device.r_tg * device.c_bl <=
         margin * device.c_bl * device.vdd / (n * device.i_s_nominal);
}

}  // namespace imf
