#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "imf/binary_frame.h"

namespace imf {

// Largest frame the SRAM macro can hold.
inline constexpr int kMacroCols = 320;
inline constexpr int kMacroRows = 240;

// One address-event: a pixel reported a temporal-contrast change.
struct Event {
  std::int64_t t_us = 0;
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int8_t polarity = 1;  // +1 (ON) or -1 (OFF)

  friend bool operator==(const Event&, const Event&) = default;
};

struct FrameConfig {
  std::int64_t t_f_us = 66000;  // 15 Hz
  int sensor_width = 240;
  int sensor_height = 180;

  // Throws InvalidParams unless t_f > 0 and 0 < dims <= macro dims.
  void validate() const;
};

// Parses `t_us,x,y,polarity` lines (polarity 0 -> -1, 1 -> +1). Lines that
// start with '#' and blank lines are skipped. Throws MalformedLine or
// NonMonotonicTimestamp with the 1-based line number.
std::vector<Event> parse_event_stream(std::istream& in);
std::vector<Event> parse_event_stream(std::string_view text);

// Inverse of parse_event_stream.
void write_event_stream(std::ostream& out, std::span<const Event> events);

// OR-accumulates events into event-based binary images. Frame k covers
// [t0 + k*t_f, t0 + (k+1)*t_f) where t0 is the first event's timestamp;
// polarity is ignored. Intervals without events still produce (empty)
// frames. Throws OutOfBounds for events outside the sensor.
std::vector<BinaryFrame> aggregate_frames(std::span<const Event> events,
                                          const FrameConfig& cfg);

inline bool is_empty(const BinaryFrame& frame) noexcept { return !frame.any(); }

}  // namespace imf
