#include "imf/filters.h"

#include <algorithm>
#include <string>
#include <vector>

#include "imf/error.h"

namespace imf {

void KernelSpec::validate() const {
  if (n < 3 || n % 2 == 0 || n > 63) {
    throw InvalidParams("kernel side must be odd and in [3, 63], got " +
                        std::to_string(n));
  }
}

bool patch_majority(int ones, int n) {
  if (n <= 0) throw InvalidParams("kernel side must be positive");
  if (ones < 0 || ones > n * n) {
    throw InvalidCount("count " + std::to_string(ones) + " outside [0, " +
                       std::to_string(n * n) + "]");
  }
  return ones >= (n * n + 1) / 2;
}

BinaryFrame median_filter_overlap(const BinaryFrame& frame, KernelSpec spec) {
  spec.validate();
  const int w = frame.width();
  const int h = frame.height();
  const int r = spec.n / 2;
  const int threshold = spec.threshold();
  BinaryFrame out(w, h);
  if (w == 0 || h == 0) return out;

  // Vertical window sums per column, slid down one row at a time.
  std::vector<int> column_sum(static_cast<std::size_t>(w), 0);
  auto accumulate_row = [&](int y, int delta) {
    if (y < 0 || y >= h) return;
    auto words = frame.row_words(y);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      std::uint64_t bits = words[wi];
      while (bits != 0) {
        const int x = static_cast<int>(wi) * 64 + __builtin_ctzll(bits);
        column_sum[x] += delta;
        bits &= bits - 1;
      }
    }
  };
  for (int y = -r; y < r; ++y) accumulate_row(y, +1);

  for (int y = 0; y < h; ++y) {
    accumulate_row(y + r, +1);
    int window = 0;
    for (int x = 0; x < std::min(r, w); ++x) window += column_sum[x];
    for (int x = 0; x < w; ++x) {
      if (x + r < w) window += column_sum[x + r];
      if (x - r - 1 >= 0) window -= column_sum[x - r - 1];
      if (window >= threshold) out.set(x, y);
    }
    accumulate_row(y - r, -1);
  }
  return out;
}

BinaryFrame nomf(const BinaryFrame& frame, KernelSpec spec) {
  spec.validate();
  const int n = spec.n;
  const int w = frame.width();
  const int h = frame.height();
  BinaryFrame out(w, h);

  for (int y0 = 0; y0 < h; y0 += n) {
    const int tile_h = std::min(n, h - y0);
    for (int x0 = 0; x0 < w; x0 += n) {
      const int tile_w = std::min(n, w - x0);
      int ones = 0;
      for (int y = y0; y < y0 + tile_h; ++y) ones += frame.count_run(y, x0, tile_w);
      const int cells = tile_w * tile_h;
      if (2 * ones >= cells) {
        for (int y = y0; y < y0 + tile_h; ++y) out.fill_run(y, x0, tile_w, true);
      }
    }
  }
  return out;
}

BinaryFrame apply_filter(const BinaryFrame& frame, KernelSpec spec, StrideMode mode) {
  return mode == StrideMode::kOverlap ? median_filter_overlap(frame, spec)
                                      : nomf(frame, spec);
}

}  // namespace imf
