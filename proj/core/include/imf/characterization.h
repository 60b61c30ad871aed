#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imf/binary_frame.h"
#include "imf/sram_macro.h"

namespace imf {

std::uint64_t binomial(int n, int k);

// All n*n-bit masks with exactly k set bits, in increasing numeric order.
// Bit i of a mask is cell (i / n, i % n) of the patch. pattern_id is the
// index into this list.
std::vector<std::uint32_t> enumerate_patterns(int n, int k);

// Which of the C(n^2, k) patterns a sweep visits.
struct PatternSelection {
  bool all = true;
  int count = 0;           // used when !all
  std::uint64_t seed = 0;  // used when !all

  static PatternSelection every() { return {}; }
  static PatternSelection sample(int m, std::uint64_t seed) { return {false, m, seed}; }
};

struct PatternBer {
  int pattern_id = 0;
  std::uint32_t mask = 0;
  std::int64_t errors = 0;   // patches latching the minority value
  std::int64_t patches = 0;  // patches evaluated, all trials
  double ber = 0.0;
};

struct BerStat {
  int n = 3;
  int k = 0;
  int trials = 0;
  std::int64_t patches_per_pass = 0;
  std::vector<PatternBer> patterns;
  // Errors per trial index, summed over patterns; input to bootstrap tests.
  std::vector<std::int64_t> errors_per_trial;
  std::int64_t errors = 0;
  std::int64_t patch_trials = 0;
  double ber = 0.0;
  double min_pattern_ber = 0.0;
  double max_pattern_ber = 0.0;
};

// Mismatch characterization: every complete n x n patch of the macro holds
// the same k-ones pattern, the macro is filtered once per trial with a fresh
// lottery seeded variation.rng_seed + trial, and
// BER = patch errors / (patches * trials).
BerStat ber_pattern_sweep(int n, int k, const DeviceParams& device,
                          const CellVariation& variation, int trials,
                          const PatternSelection& patterns,
                          const MacroGeometry& geometry = {});

// Monte Carlo of one isolated patch: trial t draws n^2 currents then n^2
// trip points (row-major) with a CellSampler seeded rng_seed + t.
struct PatchMonteCarlo {
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double error_rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials);
  }
};
PatchMonteCarlo monte_carlo_patch(std::uint32_t mask, int n, const DeviceParams& device,
                                  const CellVariation& variation, std::int64_t trials);

// Filters every frame in memory (frame i uses lottery seed rng_seed + i) and
// compares against software NOMF. Pixel-level bit error ratio.
struct ImageBerRun {
  std::int64_t differing_bits = 0;
  std::int64_t pixels = 0;
  double ber = 0.0;
};
ImageBerRun simulate_image_ber(std::span<const BinaryFrame> frames,
                               const DeviceParams& device,
                               const CellVariation& variation, int n);

// Finds the reference-point mismatch sigma whose simulated image BER on
// `frames` is closest to `target_ber`, by bisection in log(sigma). Uses the
// same seeds for every candidate so the BER is monotone in sigma up to the
// trip-point noise.
struct CalibrationResult {
  double sigma_ref = 0.0;
  double ber = 0.0;
  int evaluations = 0;
};
CalibrationResult calibrate_sigma(std::span<const BinaryFrame> frames,
                                  const OverdriveModel& model, double target_ber,
                                  std::uint64_t seed, int n = 3, int iterations = 20);

}  // namespace imf
