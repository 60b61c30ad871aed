#pragma once

#include "imf/binary_frame.h"

namespace imf {

// Square n x n majority window. n is odd and >= 3.
struct KernelSpec {
  int n = 3;

  // ceil(n^2 / 2): 5 for n = 3, 13 for n = 5.
  int threshold() const noexcept { return (n * n + 1) / 2; }
  void validate() const;  // throws InvalidParams
};

enum class StrideMode {
  kOverlap,     // stride 1, center-pixel output
  kNonOverlap,  // stride n, whole-patch output
};

// Binary median of a window holding `ones` set pixels out of n^2:
// true iff ones >= ceil(n^2 / 2). Throws InvalidCount outside [0, n^2].
bool patch_majority(int ones, int n);

// Sliding-window binary median filter with zero padding. Output has the same
// size as the input.
BinaryFrame median_filter_overlap(const BinaryFrame& frame, KernelSpec spec);

// Non-overlap median filter: the frame is tiled into disjoint n x n patches
// from (0, 0) and every pixel of a patch takes the patch majority. Edge
// tiles with m < n^2 pixels use threshold ceil(m / 2).
BinaryFrame nomf(const BinaryFrame& frame, KernelSpec spec);

BinaryFrame apply_filter(const BinaryFrame& frame, KernelSpec spec, StrideMode mode);

}  // namespace imf
