#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "imf/error.h"
#include "imf/filters.h"
#include "imf/metrics.h"
#include "imf/pipeline.h"
#include "imf/synthetic.h"
#include "oracles.h"

namespace imf {
namespace {

TEST(Downscale, TrivialCases) {
  std::mt19937_64 rng(51);
  const BinaryFrame f = test::random_frame(33, 17, 0.3, rng);
  EXPECT_EQ(downscale_or(f, 1, 1), f);
  EXPECT_EQ(downscale_or(downscale_or(f, 1, 1), 1, 1), f);
  BinaryFrame block(8, 6);
  for (int y = 0; y < 6; ++y) block.fill_run(y, 0, 8, true);
  const BinaryFrame one = downscale_or(block, 8, 6);
  EXPECT_EQ(one.width(), 1);
  EXPECT_EQ(one.height(), 1);
  EXPECT_TRUE(one.get(0, 0));
  EXPECT_THROW(downscale_or(f, 0, 1), InvalidParams);
}

TEST(Downscale, MatchesOracle) {
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 60; ++rep) {
    const int w = std::uniform_int_distribution<int>(1, 200)(rng);
    const int h = std::uniform_int_distribution<int>(1, 60)(rng);
    const int a = std::uniform_int_distribution<int>(1, 80)(rng);
    const int b = std::uniform_int_distribution<int>(1, 9)(rng);
    const BinaryFrame f = test::random_frame(w, h, 0.02, rng);
    ASSERT_EQ(downscale_or(f, a, b), test::brute_downscale(f, a, b)) << w << "x" << h;
  }
  const BinaryFrame f = test::random_frame(64, 48, 0.05, rng);
  EXPECT_EQ(downscale_or(f, 8, 6), test::brute_downscale(f, 8, 6));
}

TEST(Downscale, Monotone) {
  std::mt19937_64 rng(53);
  const BinaryFrame f = test::random_frame(64, 48, 0.02, rng);
  BinaryFrame g = f;
  g.set(10, 10);
  g.set(63, 47);
  const BinaryFrame a = downscale_or(f, 8, 6), b = downscale_or(g, 8, 6);
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) EXPECT_LE(a.get(x, y), b.get(x, y));
}

TEST(Components, Connectivity) {
  EXPECT_TRUE(connected_components(BinaryFrame(10, 10)).empty());
  const BinaryFrame diag = BinaryFrame::from_rows({"10", "01"});
  EXPECT_EQ(connected_components(diag, Connectivity::kEight).size(), 1u);
  EXPECT_EQ(connected_components(diag, Connectivity::kFour).size(), 2u);
  // A U shape needs the label merge of the second pass.
  const BinaryFrame u = BinaryFrame::from_rows({"1001", "1001", "1111"});
  const auto boxes = connected_components(u, Connectivity::kFour);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], (BoundingBox{0, 0, 4, 3}));
}

TEST(Components, MatchFloodFill) {
  std::mt19937_64 rng(54);
  auto key = [](const BoundingBox& b) { return std::tuple(b.y, b.x, b.h, b.w); };
  for (int rep = 0; rep < 100; ++rep) {
    const BinaryFrame f = test::random_frame(40, 30, rep % 3 == 0 ? 0.45 : 0.15, rng);
    for (bool eight : {false, true}) {
      const auto got = connected_components(f, eight ? Connectivity::kEight : Connectivity::kFour);
      auto want = test::flood_fill_boxes(f, eight);
      ASSERT_EQ(got.size(), want.size());
      std::sort(want.begin(), want.end(),
                [&](const BoundingBox& a, const BoundingBox& b) { return key(a) < key(b); });
      EXPECT_EQ(got, want);
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), [&](const auto& a, const auto& b) {
        return key(a) < key(b);
      }));
      // Every set pixel lies in some box.
      for (int y = 0; y < 30; ++y)
        for (int x = 0; x < 40; ++x) {
          if (!f.get(x, y)) continue;
          ASSERT_TRUE(std::any_of(got.begin(), got.end(), [&](const BoundingBox& b) {
            return x >= b.x && x < b.right() && y >= b.y && y < b.bottom();
          }));
        }
    }
  }
}

TEST(Components, PixelCounts) {
  std::mt19937_64 rng(55);
  const BinaryFrame f = test::random_frame(50, 50, 0.3, rng);
  std::size_t total = 0;
  for (const Component& c : label_components(f, Connectivity::kEight)) total += c.pixels;
  EXPECT_EQ(total, f.popcount());
}

TEST(Proposals, MapBackAndFilterSpecks) {
  BinaryFrame f(240, 180);
  for (int y = 20; y < 40; ++y) f.fill_run(y, 50, 30, true);  // object
  f.set(200, 100);                                             // speck
  TrackerConfig cfg;
  const auto boxes = propose_regions(f, cfg);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], (BoundingBox{48, 18, 32, 24}));
  cfg.min_component_area = 1;
  EXPECT_EQ(propose_regions(f, cfg).size(), 2u);
  // Boxes stay inside the frame when the grid overhangs it.
  BinaryFrame edge(20, 10);
  edge.set(19, 9);
  cfg.min_component_area = 0;
  const auto clipped = propose_regions(edge, cfg);
  ASSERT_EQ(clipped.size(), 1u);
  EXPECT_EQ(clipped[0], (BoundingBox{16, 6, 4, 4}));
}

TEST(Tracker, EmptyAndConfirmation) {
  TrackerConfig cfg;
  EXPECT_TRUE(track_update({}, {}, 0, cfg).empty());
  const std::vector<BoundingBox> box = {{10, 10, 20, 20}};
  std::vector<Track> tracks;
  for (int f = 0; f < 3; ++f) {
    tracks = track_update(std::move(tracks), box, f, cfg);
    ASSERT_EQ(tracks.size(), 1u);
    EXPECT_EQ(tracks[0].state, f < 2 ? TrackState::kTentative : TrackState::kConfirmed);
  }
  EXPECT_EQ(tracks[0].boxes.size(), 3u);
  for (int f = 3; f < 3 + cfg.kill_misses; ++f) tracks = track_update(std::move(tracks), {}, f, cfg);
  EXPECT_EQ(tracks[0].state, TrackState::kDead);
  // A dead track does not take the box back; a new id starts.
  tracks = track_update(std::move(tracks), box, 20, cfg);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].boxes.size(), 3u);
  EXPECT_EQ(tracks[1].id, 1);
}

TEST(Tracker, TiesGoToLowerTrackId) {
  TrackerConfig cfg;
  std::vector<Track> tracks(2);
  tracks[0].id = 7;
  tracks[0].boxes[0] = {0, 0, 10, 10};
  tracks[1].id = 3;
  tracks[1].boxes[0] = {0, 0, 10, 10};
  const std::vector<BoundingBox> p = {{0, 0, 10, 10}};
  const auto out = track_update(tracks, p, 1, cfg);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].boxes.count(1), 1u);  // id 3
  EXPECT_EQ(out[0].boxes.count(1), 0u);
  EXPECT_EQ(out[0].misses, 1);
}

TEST(Tracker, BelowThresholdSpawnsNewTrack) {
  TrackerConfig cfg;
  std::vector<Track> tracks = track_update({}, std::vector<BoundingBox>{{0, 0, 10, 10}}, 0, cfg);
  tracks = track_update(std::move(tracks), std::vector<BoundingBox>{{8, 8, 10, 10}}, 1, cfg);
  EXPECT_EQ(tracks.size(), 2u);
}

TEST(Tracker, ConstantVelocityObject) {
  const SyntheticRecording rec =
      constant_velocity_object(240, 180, 50, {10, 70, 40, 24}, 3, 0, 0.7, 8);
  const TrackerConfig cfg;
  std::vector<BinaryFrame> filtered;
  for (const BinaryFrame& f : rec.frames) filtered.push_back(nomf(f, {3}));
  const auto out = track_frames(filtered, cfg);
  std::set<int> ids;
  for (const Annotation& a : out) ids.insert(a.track_id);
  ASSERT_EQ(ids.size(), 1u);
  int good = 0;
  for (const Annotation& gt : rec.ground_truth) {
    for (const Annotation& a : out) {
      if (a.frame_index == gt.frame_index && iou(a.box, gt.box) >= 0.5) ++good;
    }
  }
  EXPECT_GE(good, 45);
}

TEST(Tracker, RerunIsIdentical) {
  SyntheticConfig sc;
  sc.frames = 120;
  const SyntheticRecording rec = generate_recording(sc);
  std::vector<BinaryFrame> filtered;
  for (const BinaryFrame& f : rec.frames) filtered.push_back(nomf(f, {3}));
  EXPECT_EQ(track_frames(filtered, {}), track_frames(filtered, {}));
}

TEST(Patch, Extraction) {
  BinaryFrame ones(100, 100);
  for (int y = 0; y < 100; ++y) ones.fill_run(y, 0, 64, true), ones.fill_run(y, 64, 36, true);
  EXPECT_EQ(extract_patch(ones, 50, 50).popcount(), 42u * 42u);
  const BinaryFrame corner = extract_patch(ones, 0, 0);
  EXPECT_EQ(corner.popcount(), 21u * 21u);
  EXPECT_FALSE(corner.get(20, 20));
  EXPECT_TRUE(corner.get(21, 21));

  std::mt19937_64 rng(56);
  const BinaryFrame f = test::random_frame(240, 180, 0.3, rng);
  for (int i = 0; i < 50; ++i) {
    const int cx = std::uniform_int_distribution<int>(-30, 270)(rng);
    const int cy = std::uniform_int_distribution<int>(-30, 210)(rng);
    ASSERT_EQ(extract_patch(f, cx, cy), test::naive_crop(f, cx - 21, cy - 21, 42));
  }
  EXPECT_EQ(extract_patch(f, 5, 5, 7), test::naive_crop(f, 2, 2, 7));
}

}  // namespace
}  // namespace imf
