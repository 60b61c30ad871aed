#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "imf/error.h"
#include "imf/metrics.h"
#include "oracles.h"

namespace imf {
namespace {

BoundingBox random_box(std::mt19937_64& rng, int extent = 60) {
  std::uniform_int_distribution<int> pos(0, extent), size(1, 25);
  return {pos(rng), pos(rng), size(rng), size(rng)};
}

TEST(Iou, Cases) {
  const BoundingBox a{0, 0, 4, 4};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, {10, 10, 2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, {4, 0, 4, 4}), 0.0);  // touching edges
  EXPECT_DOUBLE_EQ(iou(a, {2, 0, 4, 4}), 8.0 / 24.0);
}

TEST(Iou, MatchesPixelCount) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const BoundingBox a = random_box(rng, 30), b = random_box(rng, 30);
    ASSERT_NEAR(iou(a, b), test::naive_iou(a, b), 1e-12);
    ASSERT_DOUBLE_EQ(iou(a, b), iou(b, a));
  }
}

TEST(PrecisionRecall, Conventions) {
  const std::vector<BoundingBox> gt = {{0, 0, 5, 5}, {20, 20, 5, 5}};
  for (double thr : {0.1, 0.5, 0.9}) {
    const EvalResult r = precision_recall_f1(gt, gt, thr);
    EXPECT_DOUBLE_EQ(r.precision, 1.0);
    EXPECT_DOUBLE_EQ(r.recall, 1.0);
    EXPECT_DOUBLE_EQ(r.f1, 1.0);
  }
  const EvalResult none = precision_recall_f1({}, gt, 0.5);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_THROW(precision_recall_f1(gt, gt, 1.0), InvalidParams);
  EXPECT_DOUBLE_EQ(f1_score(0.5, 1.0), 2 * 0.5 / 1.5);
}

TEST(PrecisionRecall, GreedyAgainstMaximumMatching) {
  std::mt19937_64 rng(62);
  std::normal_distribution<double> jitter(0.0, 1.5);
  // Noisy detections of known objects: greedy equals the exhaustive optimum.
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<BoundingBox> gt, pred;
    for (int i = 0; i < 50; ++i) {
      const BoundingBox g{i % 10 * 40, i / 10 * 40, 20, 20};
      gt.push_back(g);
      if (rng() % 5) {
        pred.push_back({g.x + static_cast<int>(jitter(rng)), g.y + static_cast<int>(jitter(rng)),
                        g.w + static_cast<int>(jitter(rng)), g.h});
      }
    }
    EXPECT_EQ(count_true_positives(pred, gt, 0.5),
              static_cast<std::size_t>(test::max_matching(pred, gt, 0.5)));
  }
  // Random clutter: greedy is a maximal matching, so within a factor 2.
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<BoundingBox> gt, pred;
    for (int i = 0; i < 12; ++i) gt.push_back(random_box(rng));
    for (int i = 0; i < 12; ++i) pred.push_back(random_box(rng));
    const auto greedy = static_cast<int>(count_true_positives(pred, gt, 0.1));
    const int best = test::max_matching(pred, gt, 0.1);
    EXPECT_LE(greedy, best);
    EXPECT_GE(2 * greedy, best);
  }
}

TEST(WeightedF1, Definition) {
  EvalResult a;
  a.f1 = 0.7;
  a.n_tracks = 3;
  const std::vector<EvalResult> one = {a};
  EXPECT_DOUBLE_EQ(weighted_f1(one), 0.7);
  EvalResult p, q;
  p.f1 = 1.0;
  p.n_tracks = 1;
  q.f1 = 0.0;
  q.n_tracks = 1;
  const std::vector<EvalResult> two = {p, q};
  EXPECT_DOUBLE_EQ(weighted_f1(two), 0.5);

  std::mt19937_64 rng(63);
  std::vector<EvalResult> three(3);
  double num = 0, den = 0, lo = 1, hi = 0;
  for (EvalResult& r : three) {
    r.f1 = std::uniform_real_distribution<double>(0, 1)(rng);
    r.n_tracks = std::uniform_int_distribution<int>(1, 40)(rng);
    num += r.f1 * r.n_tracks;
    den += r.n_tracks;
    lo = std::min(lo, r.f1);
    hi = std::max(hi, r.f1);
  }
  EXPECT_NEAR(weighted_f1(three), num / den, 1e-15);
  EXPECT_GE(weighted_f1(three), lo);
  EXPECT_LE(weighted_f1(three), hi);
  EXPECT_THROW(weighted_f1({}), InvalidParams);
}

TEST(Auc, Trapezoid) {
  const auto thr = default_iou_thresholds();
  ASSERT_EQ(thr.size(), 9u);
  const std::vector<double> flat(9, 0.6);
  EXPECT_NEAR(trapezoid_auc(thr, flat), 0.8 * 0.6, 1e-12);
  const std::vector<double> curve = {0.95, 0.94, 0.9, 0.85, 0.8, 0.6, 0.4, 0.2, 0.05};
  double hand = 0;
  for (int i = 0; i < 8; ++i) hand += 0.1 * (curve[i] + curve[i + 1]) / 2;
  EXPECT_NEAR(trapezoid_auc(thr, curve), hand, 1e-12);
  EXPECT_GE(trapezoid_auc(thr, curve), 0.8 * 0.05);
  EXPECT_LE(trapezoid_auc(thr, curve), 0.8 * 0.95);
  const std::vector<double> bad = {0.1, 0.1};
  EXPECT_THROW(trapezoid_auc(bad, std::vector<double>{1, 1}), InvalidParams);
}

TEST(Recording, TracksAndRelabeling) {
  std::vector<Annotation> gt = {{0, 4, "car", {0, 0, 10, 10}},
                                {1, 4, "car", {2, 0, 10, 10}},
                                {1, 9, "bus", {40, 40, 20, 10}}};
  std::vector<Annotation> pred = {{0, 1, "object", {0, 0, 10, 10}},
                                  {1, 1, "object", {2, 0, 10, 10}},
                                  {1, 2, "object", {80, 80, 5, 5}}};
  const EvalResult r = evaluate_recording(pred, gt, 0.5, "r");
  EXPECT_EQ(r.n_tracks, 2);
  EXPECT_EQ(r.true_positives, 2u);
  EXPECT_DOUBLE_EQ(r.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.recall, 2.0 / 3.0);
  for (Annotation& a : pred) a.track_id += 100;
  EXPECT_DOUBLE_EQ(evaluate_recording(pred, gt, 0.5).f1, r.f1);

  const std::vector<Recording> recs = {{"r", gt, gt}};
  const F1Curve c = f1_curve_auc(recs, default_iou_thresholds());
  for (double v : c.weighted_f1) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_NEAR(c.auc, 0.8, 1e-12);
}

TEST(Annotations, CsvRoundTrip) {
  const std::vector<Annotation> rows = {{0, 1, "car", {1, 2, 3, 4}}, {7, 2, "bus", {5, 6, 7, 8}}};
  std::stringstream s;
  write_annotations(s, rows);
  EXPECT_EQ(s.str().substr(0, 34), "frame_index,track_id,class,x,y,w,h");
  EXPECT_EQ(read_annotations(s), rows);
  std::stringstream headerless("3,1,car,0,0,2,2\n");
  EXPECT_EQ(read_annotations(headerless).size(), 1u);
  std::stringstream bad("3,1,car,0,0,2\n");
  EXPECT_THROW(read_annotations(bad), MalformedLine);
  std::stringstream zero("3,1,car,0,0,0,2\n");
  EXPECT_THROW(read_annotations(zero), MalformedLine);
}

TEST(ImageBer, Definition) {
  std::mt19937_64 rng(64);
  std::vector<BinaryFrame> a, b;
  for (int i = 0; i < 3; ++i) a.push_back(test::random_frame(240, 180, 0.2, rng));
  EXPECT_EQ(image_ber(a, a).ber, 0.0);
  b = a;
  b[1].set(3, 3, !b[1].get(3, 3));
  const std::vector<BinaryFrame> a1 = {a[1]}, b1 = {b[1]};
  EXPECT_DOUBLE_EQ(image_ber(a1, b1).ber, 1.0 / 43200.0);
  EXPECT_DOUBLE_EQ(image_ber(a, b).ber, image_ber(b, a).ber);
  EXPECT_GT(image_ber(a, b).ber, 0.0);
  EXPECT_THROW(image_ber(a, a1), DimensionMismatch);
}

}  // namespace
}  // namespace imf
