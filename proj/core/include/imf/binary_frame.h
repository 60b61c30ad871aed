#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace imf {

// Bit-packed W x H binary image, row-major. Each row occupies a whole number
// of 64-bit words; bit x of a row lives in word x / 64 at position x % 64.
// Padding bits past `width` are always zero, so word-level comparisons and
// popcounts are exact.
class BinaryFrame {
 public:
  BinaryFrame() = default;
  BinaryFrame(int width, int height);

  // Builds a frame from text rows; '1' and '#' are set pixels, anything else
  // is clear. All rows must have the same length.
  static BinaryFrame from_rows(std::initializer_list<std::string_view> rows);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  bool get(int x, int y) const noexcept {
    return (words_[index(y, x)] >> (x & 63)) & 1u;
  }
  void set(int x, int y, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (value) {
      words_[index(y, x)] |= bit;
    } else {
      words_[index(y, x)] &= ~bit;
    }
  }
  // Bounds-checked read; throws OutOfBounds.
  bool at(int x, int y) const;

  int words_per_row() const noexcept { return stride_; }
  std::span<const std::uint64_t> row_words(int y) const noexcept {
    return {words_.data() + static_cast<std::size_t>(y) * stride_,
            static_cast<std::size_t>(stride_)};
  }
  std::span<std::uint64_t> row_words(int y) noexcept {
    return {words_.data() + static_cast<std::size_t>(y) * stride_,
            static_cast<std::size_t>(stride_)};
  }

  // Number of set bits among pixels [x, x + len) of row y. 0 <= len <= 64.
  int count_run(int y, int x, int len) const noexcept;
  // Sets or clears pixels [x, x + len) of row y.
  void fill_run(int y, int x, int len, bool value) noexcept;

  std::size_t popcount() const noexcept;
  bool any() const noexcept;
  void clear() noexcept;

  friend bool operator==(const BinaryFrame&, const BinaryFrame&) = default;

 private:
  std::size_t index(int y, int x) const noexcept {
    return static_cast<std::size_t>(y) * stride_ + (static_cast<unsigned>(x) >> 6);
  }

  int width_ = 0;
  int height_ = 0;
  int stride_ = 0;
  std::vector<std::uint64_t> words_;
};

// Number of pixels that differ. Throws DimensionMismatch on unequal sizes.
std::size_t hamming_distance(const BinaryFrame& a, const BinaryFrame& b);

}  // namespace imf
