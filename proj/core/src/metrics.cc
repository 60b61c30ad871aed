#include "imf/metrics.h"

#include <algorithm>
#include <map>
#include <set>

#include "imf/error.h"

namespace imf {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const std::int64_t iw = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const std::int64_t ih = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const std::int64_t inter = iw * ih;
  const std::int64_t uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

std::size_t count_true_positives(std::span<const BoundingBox> proposed,
                                 std::span<const BoundingBox> ground_truth, double thr) {
  struct Pair {
    double iou;
    std::size_t p, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < proposed.size(); ++p) {
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      const double v = iou(proposed[p], ground_truth[g]);
      if (v >= thr && v > 0.0) pairs.push_back({v, p, g});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.p != b.p) return a.p < b.p;
    return a.g < b.g;
  });
  std::vector<char> p_used(proposed.size(), 0);
  std::vector<char> g_used(ground_truth.size(), 0);
  std::size_t tp = 0;
  for (const Pair& pr : pairs) {
    if (p_used[pr.p] || g_used[pr.g]) continue;
    p_used[pr.p] = g_used[pr.g] = 1;
    ++tp;
  }
  return tp;
}

namespace {

EvalResult finish(std::size_t tp, std::size_t proposed, std::size_t gt, double thr) {
  EvalResult r;
  r.thr = thr;
  r.true_positives = tp;
  r.proposed = proposed;
  r.ground_truth = gt;
  r.precision = proposed ? static_cast<double>(tp) / static_cast<double>(proposed) : 0.0;
  r.recall = gt ? static_cast<double>(tp) / static_cast<double>(gt) : 0.0;
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

void check_thr(double thr) {
  if (!(thr > 0.0 && thr < 1.0)) throw InvalidParams("IoU threshold must lie in (0, 1)");
}

}  // namespace

EvalResult precision_recall_f1(std::span<const BoundingBox> proposed,
                               std::span<const BoundingBox> ground_truth, double thr) {
  check_thr(thr);
  return finish(count_true_positives(proposed, ground_truth, thr), proposed.size(),
                ground_truth.size(), thr);
}

EvalResult evaluate_recording(std::span<const Annotation> proposed,
                              std::span<const Annotation> ground_truth, double thr,
                              std::string recording_id) {
  check_thr(thr);
  std::map<int, std::pair<std::vector<BoundingBox>, std::vector<BoundingBox>>> by_frame;
  for (const Annotation& a : proposed) by_frame[a.frame_index].first.push_back(a.box);
  for (const Annotation& a : ground_truth) by_frame[a.frame_index].second.push_back(a.box);

  std::size_t tp = 0;
  for (const auto& [frame, sets] : by_frame) {
    tp += count_true_positives(sets.first, sets.second, thr);
  }
  EvalResult r = finish(tp, proposed.size(), ground_truth.size(), thr);
  std::set<int> ids;
  for (const Annotation& a : ground_truth) ids.insert(a.track_id);
  r.n_tracks = static_cast<int>(ids.size());
  r.recording_id = std::move(recording_id);
  return r;
}

double weighted_f1(std::span<const EvalResult> per_recording) {
  double num = 0.0;
  double den = 0.0;
  for (const EvalResult& r : per_recording) {
    num += r.n_tracks * r.f1;
    den += r.n_tracks;
  }
  if (den <= 0.0) throw InvalidParams("weighted_f1 needs at least one ground-truth track");
  return num / den;
}

std::vector<double> default_iou_thresholds() {
  std::vector<double> t;
  for (int i = 1; i <= 9; ++i) t.push_back(i / 10.0);
  return t;
}

double trapezoid_auc(std::span<const double> thresholds, std::span<const double> values) {
  if (thresholds.size() != values.size()) {
    throw InvalidParams("threshold and value counts differ");
  }
  double area = 0.0;
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    const double dx = thresholds[i] - thresholds[i - 1];
    if (!(dx > 0.0)) throw InvalidParams("thresholds must be strictly increasing");
    area += 0.5 * dx * (values[i] + values[i - 1]);
  }
  return area;
}

F1Curve f1_curve_auc(std::span<const Recording> recordings,
                     std::span<const double> thresholds) {
  F1Curve curve;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double thr : thresholds) {
    std::vector<EvalResult> results;
    for (const Recording& rec : recordings) {
      results.push_back(evaluate_recording(rec.proposed, rec.ground_truth, thr, rec.id));
    }
    curve.weighted_f1.push_back(weighted_f1(results));
  }
  curve.auc = trapezoid_auc(curve.thresholds, curve.weighted_f1);
  return curve;
}

BERResult image_ber(std::span<const BinaryFrame> hardware,
                    std::span<const BinaryFrame> reference) {
  if (hardware.size() != reference.size()) {
    throw DimensionMismatch("frame counts differ");
  }
  BERResult r;
  r.frames = hardware.size();
  if (hardware.empty()) return r;
  r.width = reference.front().width();
  r.height = reference.front().height();
  for (std::size_t i = 0; i < hardware.size(); ++i) {
    if (reference[i].width() != r.width || reference[i].height() != r.height) {
      throw DimensionMismatch("frames within a set have different sizes");
    }
    r.bit_errors += hamming_distance(hardware[i], reference[i]);
  }
  const double bits = static_cast<double>(r.width) * r.height * static_cast<double>(r.frames);
  r.ber = bits > 0.0 ? static_cast<double>(r.bit_errors) / bits : 0.0;
  return r;
}

}  // namespace imf
