#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>

#include "imf/characterization.h"
#include "imf/error.h"
#include "imf/filters.h"
#include "imf/synthetic.h"
#include "oracles.h"

namespace imf {
namespace {

MacroGeometry small_macro() {
  MacroGeometry g;
  g.rows = 15;
  g.cols = 30;
  return g;
}

TEST(Patterns, Enumeration) {
  EXPECT_EQ(binomial(9, 5), 126u);
  EXPECT_EQ(binomial(25, 13), 5200300u);
  const auto k5 = enumerate_patterns(3, 5);
  ASSERT_EQ(k5.size(), 126u);
  EXPECT_TRUE(std::is_sorted(k5.begin(), k5.end()));
  EXPECT_EQ(std::set<std::uint32_t>(k5.begin(), k5.end()).size(), 126u);
  for (std::uint32_t m : k5) EXPECT_EQ(std::popcount(m), 5);
  std::size_t total = 0;
  for (int k = 0; k <= 9; ++k) total += enumerate_patterns(3, k).size();
  EXPECT_EQ(total, 512u);
  EXPECT_EQ(enumerate_patterns(3, 0), std::vector<std::uint32_t>{0});
  EXPECT_EQ(enumerate_patterns(3, 9), std::vector<std::uint32_t>{511});
  EXPECT_THROW(enumerate_patterns(3, 10), InvalidCount);
}

TEST(Sweep, FullMacroHas8480Patches) {
  const BerStat s = ber_pattern_sweep(3, 5, DeviceParams{}, {}, 1, PatternSelection::sample(1, 3));
  EXPECT_EQ(s.patches_per_pass, 8480);
  EXPECT_EQ(s.patterns.size(), 1u);
  EXPECT_EQ(s.ber, 0.0);
}

TEST(Sweep, UniformPatternsNeverErr) {
  const OverdriveModel model;
  const OperatingPoint op{0.7, 27, Corner::kTT};
  CellVariation v = model.variation_at(op, 1);
  v.sigma_i_over_mu = 0.24;
  v.sigma_vtrip = 0.05;
  for (int k : {0, 9}) {
    const BerStat s = ber_pattern_sweep(3, k, model.device_at(op), v, 400,
                                        PatternSelection::every(), small_macro());
    EXPECT_EQ(s.errors, 0);
    EXPECT_EQ(s.patch_trials, 50 * 400);
  }
}

TEST(Sweep, SampleSelectionIsSeededAndSorted) {
  const DeviceParams d;
  const auto a = ber_pattern_sweep(3, 4, d, {}, 1, PatternSelection::sample(10, 8), small_macro());
  const auto b = ber_pattern_sweep(3, 4, d, {}, 1, PatternSelection::sample(10, 8), small_macro());
  ASSERT_EQ(a.patterns.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(a.patterns[i].pattern_id, b.patterns[i].pattern_id);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_LT(a.patterns[i - 1].pattern_id, a.patterns[i].pattern_id);
  const auto all = ber_pattern_sweep(3, 4, d, {}, 1, PatternSelection::sample(500, 8), small_macro());
  EXPECT_EQ(all.patterns.size(), 126u);
}

TEST(Sweep, AggregatesAreConsistent) {
  const OverdriveModel model;
  const OperatingPoint op{0.7, 27, Corner::kTT};
  CellVariation v = model.variation_at(op, 12);
  v.sigma_i_over_mu = 0.2;
  const BerStat s = ber_pattern_sweep(3, 5, model.device_at(op), v, 6,
                                      PatternSelection::sample(20, 1), small_macro());
  std::int64_t errors = 0;
  for (const PatternBer& p : s.patterns) {
    errors += p.errors;
    EXPECT_EQ(p.patches, 50 * 6);
    EXPECT_DOUBLE_EQ(p.ber, static_cast<double>(p.errors) / p.patches);
  }
  EXPECT_EQ(errors, s.errors);
  std::int64_t per_trial = 0;
  for (std::int64_t e : s.errors_per_trial) per_trial += e;
  EXPECT_EQ(per_trial, s.errors);
  EXPECT_GT(s.errors, 0);
  EXPECT_DOUBLE_EQ(s.ber, static_cast<double>(s.errors) / (20.0 * 50 * 6));
}

TEST(Sweep, MatchesPatchMonteCarloRate) {
  // The macro sweep and the isolated-patch Monte Carlo sample different
  // cells, but their error rates estimate the same probability.
  const OverdriveModel model;
  const OperatingPoint op{0.7, 27, Corner::kTT};
  CellVariation v = model.variation_at(op, 99);
  v.sigma_i_over_mu = 0.2;
  const std::uint32_t mask = enumerate_patterns(3, 5)[17];
  const PatchMonteCarlo mc = monte_carlo_patch(mask, 3, model.device_at(op), v, 20000);
  MacroGeometry g;
  g.rows = 60;
  g.cols = 60;
  const BerStat s = ber_pattern_sweep(3, 5, model.device_at(op), v, 50,
                                      PatternSelection::sample(126, 0), g);
  const PatternBer& p = s.patterns[17];
  const double a = mc.error_rate();
  const double b = p.ber;
  const double se = std::sqrt(a * (1 - a) / 20000 + b * (1 - b) / p.patches);
  EXPECT_NEAR(a, b, 5 * se + 1e-9);
}

TEST(ImageBer, ZeroVariationIsExact) {
  std::mt19937_64 rng(41);
  std::vector<BinaryFrame> frames;
  for (int i = 0; i < 10; ++i) frames.push_back(test::random_frame(240, 180, 0.3, rng));
  const ImageBerRun r = simulate_image_ber(frames, DeviceParams{}, {}, 3);
  EXPECT_EQ(r.differing_bits, 0);
  EXPECT_EQ(r.pixels, 10 * 43200);
}

TEST(Calibration, HitsTargetOnSmallSet) {
  SyntheticConfig sc;
  sc.frames = 40;
  sc.seed = 5;
  const auto rec = generate_recording(sc);
  const OverdriveModel model;
  const CalibrationResult c = calibrate_sigma(rec.frames, model, 2e-4, 17, 3, 10);
  EXPECT_EQ(c.evaluations, 10);
  EXPECT_GT(c.sigma_ref, 0.05);
  EXPECT_LT(c.sigma_ref, 0.24);
  EXPECT_GT(c.ber, 1e-4);
  EXPECT_LT(c.ber, 4e-4);
  EXPECT_THROW(calibrate_sigma({}, model, 1e-4, 1), InvalidParams);
}

}  // namespace
}  // namespace imf
