#pragma once

#include <span>
#include <string>
#include <vector>

#include "imf/binary_frame.h"
#include "imf/box.h"

namespace imf {

double iou(const BoundingBox& a, const BoundingBox& b);

struct EvalResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double thr = 0.0;
  std::string recording_id;
  int n_tracks = 0;
  std::size_t true_positives = 0;
  std::size_t proposed = 0;
  std::size_t ground_truth = 0;
};

double f1_score(double precision, double recall);

// Greedy one-to-one TP matching by descending IoU (ties: lower proposal
// index, then lower ground-truth index). Pairs below `thr` never match.
std::size_t count_true_positives(std::span<const BoundingBox> proposed,
                                 std::span<const BoundingBox> ground_truth, double thr);

// Single set of boxes (one frame).
EvalResult precision_recall_f1(std::span<const BoundingBox> proposed,
                               std::span<const BoundingBox> ground_truth, double thr);

// Whole recording: TP and box counts are summed over frames before P/R are
// formed. n_tracks is the number of distinct ground-truth track ids.
EvalResult evaluate_recording(std::span<const Annotation> proposed,
                              std::span<const Annotation> ground_truth, double thr,
                              std::string recording_id = {});

// Sum of n_tracks * f1 over sum of n_tracks. Throws InvalidParams when the
// sequence is empty or carries no tracks.
double weighted_f1(std::span<const EvalResult> per_recording);

std::vector<double> default_iou_thresholds();  // 0.1, 0.2, ..., 0.9

struct F1Curve {
  std::vector<double> thresholds;
  std::vector<double> weighted_f1;
  double auc = 0.0;
};

// Trapezoidal area under weighted_f1(thr). Thresholds must be strictly
// increasing and match the curve length.
double trapezoid_auc(std::span<const double> thresholds, std::span<const double> values);

struct Recording {
  std::string id;
  std::vector<Annotation> proposed;
  std::vector<Annotation> ground_truth;
};

F1Curve f1_curve_auc(std::span<const Recording> recordings,
                     std::span<const double> thresholds);

struct BERResult {
  double ber = 0.0;
  std::size_t frames = 0;
  int width = 0;
  int height = 0;
  std::size_t bit_errors = 0;
};

// Fraction of differing pixels over all frame pairs. Throws
// DimensionMismatch on unequal counts or sizes.
BERResult image_ber(std::span<const BinaryFrame> hardware,
                    std::span<const BinaryFrame> reference);

}  // namespace imf
