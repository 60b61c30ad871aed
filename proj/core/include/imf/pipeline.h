#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "imf/binary_frame.h"
#include "imf/box.h"

namespace imf {

enum class Connectivity { kFour = 4, kEight = 8 };

struct TrackerConfig {
  double iou_match_threshold = 0.3;
  int confirm_hits = 3;
  int kill_misses = 5;
  int rescale_a = 8;  // horizontal
  int rescale_b = 6;  // vertical
  int min_component_area = 2;  // downscaled pixels
  Connectivity connectivity = Connectivity::kEight;

  void validate() const;  // throws InvalidParams
};

// Output is ceil(W/a) x ceil(H/b); each pixel ORs its a x b source window.
BinaryFrame downscale_or(const BinaryFrame& frame, int a, int b);

struct Component {
  BoundingBox box;
  int pixels = 0;
};

// Two-pass union-find labeling. Components sorted by (y, x, h, w) of their box.
std::vector<Component> label_components(const BinaryFrame& frame, Connectivity connectivity);
std::vector<BoundingBox> connected_components(const BinaryFrame& frame,
                                              Connectivity connectivity = Connectivity::kEight);

// Downscale, label, drop specks, and map boxes back to frame coordinates.
std::vector<BoundingBox> propose_regions(const BinaryFrame& frame, const TrackerConfig& cfg);

enum class TrackState { kTentative, kConfirmed, kDead };

struct Track {
  int id = 0;
  std::map<int, BoundingBox> boxes;  // frame index -> box
  int hits = 0;    // consecutive
  int misses = 0;  // consecutive
  TrackState state = TrackState::kTentative;

  const BoundingBox& last_box() const { return boxes.rbegin()->second; }
};

// One frame of greedy overlap tracking. Live tracks and proposals are paired
// by descending IoU (ties: lower track id, then lower proposal index); pairs
// at or above the threshold extend their track. Leftover proposals start
// tentative tracks, leftover tracks take a miss. Tracks confirm after
// confirm_hits consecutive hits and die after kill_misses consecutive misses.
std::vector<Track> track_update(std::vector<Track> tracks,
                                std::span<const BoundingBox> proposals, int frame_index,
                                const TrackerConfig& cfg);

// Stateful wrapper; frames must arrive in order.
class OverlapTracker {
 public:
  explicit OverlapTracker(TrackerConfig cfg);

  void update(std::span<const BoundingBox> proposals, int frame_index);
  const std::vector<Track>& tracks() const noexcept { return tracks_; }

 private:
  TrackerConfig cfg_;
  std::vector<Track> tracks_;
};

// Region proposal + tracking over a sequence of (already denoised) frames.
// Emits one annotation per confirmed track per frame it was seen in.
std::vector<Annotation> track_frames(std::span<const BinaryFrame> frames,
                                     const TrackerConfig& cfg);

// side x side crop centred on (cx, cy), zero outside the frame. The top-left
// corner is (cx - side/2, cy - side/2).
BinaryFrame extract_patch(const BinaryFrame& frame, int cx, int cy, int side = 42);

}  // namespace imf
