#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace imf {

// Axis-aligned pixel box; (x, y) is the top-left pixel.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  std::int64_t area() const noexcept { return static_cast<std::int64_t>(w) * h; }
  int right() const noexcept { return x + w; }    // exclusive
  int bottom() const noexcept { return y + h; }   // exclusive

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// One row of a ground-truth or track file.
struct Annotation {
  int frame_index = 0;
  int track_id = 0;
  std::string label = "object";
  BoundingBox box;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// CSV `frame_index,track_id,class,x,y,w,h`, with a header line on write. A
// leading header line is accepted on read.
void write_annotations(std::ostream& out, const std::vector<Annotation>& rows);
std::vector<Annotation> read_annotations(std::istream& in);
void write_annotations_file(const std::filesystem::path& path,
                            const std::vector<Annotation>& rows);
std::vector<Annotation> read_annotations_file(const std::filesystem::path& path);

}  // namespace imf
