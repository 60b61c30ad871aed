#include "imf/binary_frame.h"

#include <algorithm>
#include <bit>
#include <string>

#include "imf/error.h"

namespace imf {
namespace {

constexpr std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

BinaryFrame::BinaryFrame(int width, int height)
    : width_(width), height_(height), stride_((width + 63) / 64) {
  if (width < 0 || height < 0) {
    throw InvalidParams("frame dimensions must be non-negative");
  }
  words_.assign(static_cast<std::size_t>(stride_) * height_, 0);
}

BinaryFrame BinaryFrame::from_rows(std::initializer_list<std::string_view> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h == 0 ? 0 : static_cast<int>(rows.begin()->size());
  BinaryFrame frame(w, h);
  int y = 0;
  for (std::string_view row : rows) {
    if (static_cast<int>(row.size()) != w) {
      throw DimensionMismatch("ragged rows in BinaryFrame::from_rows");
    }
    for (int x = 0; x < w; ++x) {
      if (row[x] == '1' || row[x] == '#') frame.set(x, y);
    }
    ++y;
  }
  return frame;
}

bool BinaryFrame::at(int x, int y) const {
  if (!in_bounds(x, y)) {
    throw OutOfBounds("pixel (" + std::to_string(x) + "," + std::to_string(y) +
                      ") outside " + std::to_string(width_) + "x" +
                      std::to_string(height_) + " frame");
  }
  return get(x, y);
}

int BinaryFrame::count_run(int y, int x, int len) const noexcept {
  if (len <= 0) return 0;
  const std::uint64_t* row = words_.data() + static_cast<std::size_t>(y) * stride_;
  const int w = x >> 6;
  const int off = x & 63;
  const int first = std::min(len, 64 - off);
  int count = std::popcount((row[w] >> off) & low_mask(first));
  if (len > first) {
    count += std::popcount(row[w + 1] & low_mask(len - first));
  }
  return count;
}

void BinaryFrame::fill_run(int y, int x, int len, bool value) noexcept {
  std::uint64_t* row = words_.data() + static_cast<std::size_t>(y) * stride_;
  while (len > 0) {
    const int w = x >> 6;
    const int off = x & 63;
    const int take = std::min(len, 64 - off);
    const std::uint64_t mask = low_mask(take) << off;
    if (value) {
      row[w] |= mask;
    } else {
      row[w] &= ~mask;
    }
    x += take;
    len -= take;
  }
}

std::size_t BinaryFrame::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t word : words_) total += std::popcount(word);
  return total;
}

bool BinaryFrame::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w != 0; });
}

void BinaryFrame::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::size_t hamming_distance(const BinaryFrame& a, const BinaryFrame& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch("hamming_distance: frames differ in size");
  }
  std::size_t total = 0;
  for (int y = 0; y < a.height(); ++y) {
    auto ra = a.row_words(y);
    auto rb = b.row_words(y);
    for (std::size_t i = 0; i < ra.size(); ++i) total += std::popcount(ra[i] ^ rb[i]);
  }
  return total;
}

}  // namespace imf
