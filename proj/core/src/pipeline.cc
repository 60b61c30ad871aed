#include "imf/pipeline.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "imf/error.h"
#include "imf/metrics.h"

namespace imf {
namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

void TrackerConfig::validate() const {
  if (!(iou_match_threshold > 0.0 && iou_match_threshold < 1.0)) {
    throw InvalidParams("iou_match_threshold must lie in (0, 1)");
  }
  if (confirm_hits < 1 || kill_misses < 1) {
    throw InvalidParams("confirm_hits and kill_misses must be >= 1");
  }
  if (rescale_a < 1 || rescale_b < 1) throw InvalidParams("rescale factors must be >= 1");
  if (min_component_area < 0) throw InvalidParams("min_component_area must be >= 0");
}

BinaryFrame downscale_or(const BinaryFrame& frame, int a, int b) {
  if (a < 1 || b < 1) throw InvalidParams("rescale factors must be >= 1");
  const int ow = (frame.width() + a - 1) / a;
  const int oh = (frame.height() + b - 1) / b;
  BinaryFrame out(ow, oh);
  for (int oy = 0; oy < oh; ++oy) {
    const int y_end = std::min(frame.height(), (oy + 1) * b);
    for (int ox = 0; ox < ow; ++ox) {
      const int x0 = ox * a;
      const int len = std::min(a, frame.width() - x0);
      bool any = false;
      for (int y = oy * b; y < y_end && !any; ++y) {
        for (int x = x0; x < x0 + len && !any; x += 64) {
          any = frame.count_run(y, x, std::min(64, x0 + len - x)) > 0;
        }
      }
      if (any) out.set(ox, oy);
    }
  }
  return out;
}

std::vector<Component> label_components(const BinaryFrame& frame, Connectivity connectivity) {
  const int w = frame.width();
  const int h = frame.height();
  std::vector<int> labels(frame.pixel_count(), -1);
  DisjointSet sets;
  auto label_at = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= w) ? -1 : labels[static_cast<std::size_t>(y) * w + x];
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!frame.get(x, y)) continue;
      int neighbours[4];
      int count = 0;
      neighbours[count++] = label_at(x - 1, y);
      neighbours[count++] = label_at(x, y - 1);
      if (connectivity == Connectivity::kEight) {
        neighbours[count++] = label_at(x - 1, y - 1);
        neighbours[count++] = label_at(x + 1, y - 1);
      }
      int label = -1;
      for (int i = 0; i < count; ++i) {
        if (neighbours[i] < 0) continue;
        if (label < 0) {
          label = neighbours[i];
        } else {
          sets.unite(label, neighbours[i]);
        }
      }
      if (label < 0) label = sets.make();
      labels[static_cast<std::size_t>(y) * w + x] = label;
    }
  }

  struct Extent {
    int x0, y0, x1, y1, pixels;
  };
  std::vector<int> slot;
  std::vector<Extent> extents;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = labels[static_cast<std::size_t>(y) * w + x];
      if (l < 0) continue;
      const int root = sets.find(l);
      if (static_cast<int>(slot.size()) <= root) slot.resize(root + 1, -1);
      if (slot[root] < 0) {
        slot[root] = static_cast<int>(extents.size());
        extents.push_back({x, y, x, y, 0});
      }
      Extent& e = extents[slot[root]];
      e.x0 = std::min(e.x0, x);
      e.x1 = std::max(e.x1, x);
      e.y1 = std::max(e.y1, y);
      ++e.pixels;
    }
  }

  std::vector<Component> out;
  out.reserve(extents.size());
  for (const Extent& e : extents) {
    out.push_back({{e.x0, e.y0, e.x1 - e.x0 + 1, e.y1 - e.y0 + 1}, e.pixels});
  }
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    return std::tie(a.box.y, a.box.x, a.box.h, a.box.w) <
           std::tie(b.box.y, b.box.x, b.box.h, b.box.w);
  });
  return out;
}

std::vector<BoundingBox> connected_components(const BinaryFrame& frame,
                                              Connectivity connectivity) {
  std::vector<BoundingBox> boxes;
  for (const Component& c : label_components(frame, connectivity)) boxes.push_back(c.box);
  return boxes;
}

std::vector<BoundingBox> propose_regions(const BinaryFrame& frame, const TrackerConfig& cfg) {
  cfg.validate();
  const BinaryFrame small = downscale_or(frame, cfg.rescale_a, cfg.rescale_b);
  std::vector<BoundingBox> boxes;
  for (const Component& c : label_components(small, cfg.connectivity)) {
    if (c.pixels < cfg.min_component_area) continue;
    BoundingBox b;
    b.x = c.box.x * cfg.rescale_a;
    b.y = c.box.y * cfg.rescale_b;
    b.w = std::min(c.box.w * cfg.rescale_a, frame.width() - b.x);
    b.h = std::min(c.box.h * cfg.rescale_b, frame.height() - b.y);
    boxes.push_back(b);
  }
  return boxes;
}

std::vector<Track> track_update(std::vector<Track> tracks,
                                std::span<const BoundingBox> proposals, int frame_index,
                                const TrackerConfig& cfg) {
  cfg.validate();
  struct Pair {
    double iou;
    int track;     // index into tracks
    int proposal;  // index into proposals
  };
  std::vector<Pair> pairs;
  for (int t = 0; t < static_cast<int>(tracks.size()); ++t) {
    if (tracks[t].state == TrackState::kDead || tracks[t].boxes.empty()) continue;
    for (int p = 0; p < static_cast<int>(proposals.size()); ++p) {
      const double overlap = iou(tracks[t].last_box(), proposals[p]);
      if (overlap >= cfg.iou_match_threshold) pairs.push_back({overlap, t, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (tracks[a.track].id != tracks[b.track].id) return tracks[a.track].id < tracks[b.track].id;
    return a.proposal < b.proposal;
  });

  std::vector<char> track_used(tracks.size(), 0);
  std::vector<char> proposal_used(proposals.size(), 0);
  for (const Pair& pr : pairs) {
    if (track_used[pr.track] || proposal_used[pr.proposal]) continue;
    track_used[pr.track] = 1;
    proposal_used[pr.proposal] = 1;
    Track& tr = tracks[pr.track];
    tr.boxes[frame_index] = proposals[pr.proposal];
    ++tr.hits;
    tr.misses = 0;
    if (tr.state == TrackState::kTentative && tr.hits >= cfg.confirm_hits) {
      tr.state = TrackState::kConfirmed;
    }
  }

  int next_id = 0;
  for (Track& tr : tracks) {
    next_id = std::max(next_id, tr.id + 1);
  }
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    Track& tr = tracks[t];
    if (tr.state == TrackState::kDead || track_used[t]) continue;
    tr.hits = 0;
    if (++tr.misses >= cfg.kill_misses) tr.state = TrackState::kDead;
  }
  for (std::size_t p = 0; p < proposals.size(); ++p) {
    if (proposal_used[p]) continue;
    Track tr;
    tr.id = next_id++;
    tr.boxes[frame_index] = proposals[p];
    tr.hits = 1;
    tr.state = cfg.confirm_hits <= 1 ? TrackState::kConfirmed : TrackState::kTentative;
    tracks.push_back(std::move(tr));
  }
  return tracks;
}

OverlapTracker::OverlapTracker(TrackerConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void OverlapTracker::update(std::span<const BoundingBox> proposals, int frame_index) {
  tracks_ = track_update(std::move(tracks_), proposals, frame_index, cfg_);
}

std::vector<Annotation> track_frames(std::span<const BinaryFrame> frames,
                                     const TrackerConfig& cfg) {
  OverlapTracker tracker(cfg);
  std::vector<Annotation> out;
  for (int f = 0; f < static_cast<int>(frames.size()); ++f) {
    const std::vector<BoundingBox> proposals = propose_regions(frames[f], cfg);
    tracker.update(proposals, f);
    for (const Track& tr : tracker.tracks()) {
      if (tr.state != TrackState::kConfirmed) continue;
      auto it = tr.boxes.find(f);
      if (it == tr.boxes.end()) continue;
      out.push_back({f, tr.id, "object", it->second});
    }
  }
  return out;
}

BinaryFrame extract_patch(const BinaryFrame& frame, int cx, int cy, int side) {
  if (side <= 0) throw InvalidParams("patch side must be positive");
  BinaryFrame patch(side, side);
  const int x0 = cx - side / 2;
  const int y0 = cy - side / 2;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      if (frame.in_bounds(x0 + x, y0 + y) && frame.get(x0 + x, y0 + y)) patch.set(x, y);
    }
  }
  return patch;
}

}  // namespace imf
