#include "imf/characterization.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "cell_sampler.h"
#include "imf/error.h"
#include "imf/filters.h"

namespace imf {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
  return result;
}

std::vector<std::uint32_t> enumerate_patterns(int n, int k) {
  const int cells = n * n;
  if (n <= 0 || cells > 25) throw InvalidParams("pattern side must be in 1..5");
  if (k < 0 || k > cells) {
    throw InvalidCount("k = " + std::to_string(k) + " outside [0, " +
                       std::to_string(cells) + "]");
  }
  std::vector<std::uint32_t> masks;
  masks.reserve(binomial(cells, k));
  if (k == 0) {
    masks.push_back(0);
    return masks;
  }
  // Gosper's hack walks k-subsets in increasing numeric order.
  std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  const std::uint32_t limit = std::uint32_t{1} << cells;
  while (mask < limit) {
    masks.push_back(mask);
    const std::uint32_t c = mask & (~mask + 1);
    const std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return masks;
}

BerStat ber_pattern_sweep(int n, int k, const DeviceParams& device,
                          const CellVariation& variation, int trials,
                          const PatternSelection& selection,
                          const MacroGeometry& geometry) {
  if (trials <= 0) throw InvalidParams("trials must be positive");
  const std::vector<std::uint32_t> all = enumerate_patterns(n, k);

  std::vector<int> ids;
  if (selection.all || selection.count >= static_cast<int>(all.size())) {
    ids.resize(all.size());
    std::iota(ids.begin(), ids.end(), 0);
  } else {
    if (selection.count <= 0) throw InvalidParams("pattern sample size must be positive");
    std::vector<int> pool(all.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::mt19937_64 rng(selection.seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    ids.assign(pool.begin(), pool.begin() + selection.count);
    std::sort(ids.begin(), ids.end());
  }

  MacroState macro = init_macro(geometry, device, variation);
  const int groups = geometry.rows / n;
  const int per_row = geometry.cols / n;

  BerStat stat;
  stat.n = n;
  stat.k = k;
  stat.trials = trials;
  stat.patches_per_pass = full_patch_count(geometry, n);
  stat.errors_per_trial.assign(static_cast<std::size_t>(trials), 0);

  std::vector<CellAddress> pixels;
  for (int id : ids) {
    const std::uint32_t mask = all[static_cast<std::size_t>(id)];
    pixels.clear();
    for (int g = 0; g < groups; ++g) {
      for (int p = 0; p < per_row; ++p) {
        for (int i = 0; i < n * n; ++i) {
          if (mask & (std::uint32_t{1} << i)) {
            pixels.push_back({g * n + i / n, p * n + i % n});
          }
        }
      }
    }

    PatternBer pb;
    pb.pattern_id = id;
    pb.mask = mask;
    for (int t = 0; t < trials; ++t) {
      CellVariation v = variation;
      v.rng_seed = variation.rng_seed + static_cast<std::uint64_t>(t);
      macro.resample(device, v);
      macro.clear_memory();
      macro.write_events(pixels);
      const FilterReport report = macro.filter_in_memory(n, device);
      // Edge patches hold zeros and never err, so every error is in a full patch.
      pb.errors += report.patch_errors;
      stat.errors_per_trial[static_cast<std::size_t>(t)] += report.patch_errors;
    }
    pb.patches = stat.patches_per_pass * trials;
    pb.ber = static_cast<double>(pb.errors) / static_cast<double>(pb.patches);
    stat.errors += pb.errors;
    stat.patch_trials += pb.patches;
    stat.patterns.push_back(pb);
  }

  stat.ber = stat.patch_trials == 0
                 ? 0.0
                 : static_cast<double>(stat.errors) / static_cast<double>(stat.patch_trials);
  if (!stat.patterns.empty()) {
    auto [lo, hi] = std::minmax_element(
        stat.patterns.begin(), stat.patterns.end(),
        [](const PatternBer& a, const PatternBer& b) { return a.ber < b.ber; });
    stat.min_pattern_ber = lo->ber;
    stat.max_pattern_ber = hi->ber;
  }
  return stat;
}

PatchMonteCarlo monte_carlo_patch(std::uint32_t mask, int n, const DeviceParams& device,
                                  const CellVariation& variation, std::int64_t trials) {
  const int cells = n * n;
  if (n <= 0 || cells > 25) throw InvalidParams("patch side must be in 1..5");
  device.validate();
  variation.validate();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(cells));
  int ones = 0;
  for (int i = 0; i < cells; ++i) {
    bits[i] = (mask >> i) & 1u;
    ones += bits[i];
  }
  const bool ideal = patch_majority(ones, n);

  std::vector<double> currents(bits.size());
  std::vector<double> vtrips(bits.size());
  PatchMonteCarlo result;
  result.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    detail::CellSampler sampler(variation.rng_seed + static_cast<std::uint64_t>(t));
    for (double& c : currents) c = sampler.current(device.i_s_nominal, variation.sigma_i_over_mu);
    for (double& v : vtrips) {
      v = sampler.trip_point(device.v_trip_nominal, variation.sigma_vtrip, device.vdd);
    }
    if (resolve_patch(bits, currents, vtrips, device, n).bit != ideal) ++result.errors;
  }
  return result;
}

ImageBerRun simulate_image_ber(std::span<const BinaryFrame> frames,
                               const DeviceParams& device,
                               const CellVariation& variation, int n) {
  ImageBerRun run;
  if (frames.empty()) return run;
  const KernelSpec spec{n};
  MacroState macro = init_macro(
      MacroGeometry::for_frame(frames.front().width(), frames.front().height()), device,
      variation);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const BinaryFrame& frame = frames[i];
    if (frame.width() != macro.geometry().cols || frame.height() != macro.geometry().rows) {
      throw DimensionMismatch("simulate_image_ber: frames differ in size");
    }
    CellVariation v = variation;
    v.rng_seed = variation.rng_seed + i;
    macro.resample(device, v);
    macro.clear_memory();
    macro.load_frame(frame);
    macro.filter_in_memory(n, device);
    run.differing_bits += static_cast<std::int64_t>(hamming_distance(macro.bits(), nomf(frame, spec)));
    run.pixels += static_cast<std::int64_t>(frame.pixel_count());
  }
  run.ber = static_cast<double>(run.differing_bits) / static_cast<double>(run.pixels);
  return run;
}

CalibrationResult calibrate_sigma(std::span<const BinaryFrame> frames,
                                  const OverdriveModel& model, double target_ber,
                                  std::uint64_t seed, int n, int iterations) {
  if (frames.empty()) throw InvalidParams("calibration needs frames");
  if (!(target_ber > 0.0)) throw InvalidParams("target BER must be positive");
  const OperatingPoint ref{model.ref_vdd, 27.0, Corner::kTT};

  CalibrationResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  auto evaluate = [&](double sigma) {
    OverdriveModel m = model;
    m.sigma_ref = sigma;
    const double ber =
        simulate_image_ber(frames, m.device_at(ref), m.variation_at(ref, seed), n).ber;
    ++best.evaluations;
    const double gap = std::abs(std::log((ber + 1e-12) / target_ber));
    if (gap < best_gap) {
      best_gap = gap;
      best.sigma_ref = sigma;
      best.ber = ber;
    }
    return ber;
  };

  // Currents stay positive for |z| <= 4 only while sigma < 0.25.
  double lo = std::log(0.01);
  double hi = std::log(0.24);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (evaluate(std::exp(mid)) < target_ber) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace imf
