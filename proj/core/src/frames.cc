#include "imf/frames.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "imf/error.h"

namespace imf {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_int(std::string_view field, T& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

Event parse_line(std::string_view line, std::size_t line_no) {
  std::string_view fields[4];
  int count = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (count == 4) throw MalformedLine(line_no, "expected 4 fields");
    fields[count++] = line.substr(start, comma == std::string_view::npos
                                             ? std::string_view::npos
                                             : comma - start);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != 4) throw MalformedLine(line_no, "expected 4 fields");

  Event ev;
  int polarity = 0;
  if (!parse_int(fields[0], ev.t_us) || ev.t_us < 0) {
    throw MalformedLine(line_no, "bad timestamp");
  }
  if (!parse_int(fields[1], ev.x) || ev.x < 0 || ev.x > 0xFFFF) {
    throw MalformedLine(line_no, "bad x address");
  }
  if (!parse_int(fields[2], ev.y) || ev.y < 0 || ev.y > 0xFFFF) {
    throw MalformedLine(line_no, "bad y address");
  }
  if (!parse_int(fields[3], polarity) || (polarity != 0 && polarity != 1)) {
    throw MalformedLine(line_no, "polarity must be 0 or 1");
  }
  ev.polarity = polarity == 1 ? 1 : -1;
  return ev;
}

}  // namespace

void FrameConfig::validate() const {
  if (t_f_us <= 0) throw InvalidParams("frame interval t_f must be positive");
  if (sensor_width <= 0 || sensor_height <= 0 || sensor_width > kMacroCols ||
      sensor_height > kMacroRows) {
    throw InvalidParams("sensor dimensions must be in 1..320 x 1..240");
  }
}

std::vector<Event> parse_event_stream(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    Event ev = parse_line(body, line_no);
    if (!events.empty() && ev.t_us < events.back().t_us) {
      throw NonMonotonicTimestamp(line_no);
    }
    events.push_back(ev);
  }
  return events;
}

std::vector<Event> parse_event_stream(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_event_stream(in);
}

void write_event_stream(std::ostream& out, std::span<const Event> events) {
  for (const Event& ev : events) {
    out << ev.t_us << ',' << ev.x << ',' << ev.y << ','
        << (ev.polarity > 0 ? 1 : 0) << '\n';
  }
}

std::vector<BinaryFrame> aggregate_frames(std::span<const Event> events,
                                          const FrameConfig& cfg) {
  cfg.validate();
  std::vector<BinaryFrame> frames;
  if (events.empty()) return frames;

  const std::int64_t t0 = events.front().t_us;
  std::int64_t prev_t = t0;
  for (const Event& ev : events) {
    if (ev.t_us < prev_t) {
      throw InvalidParams("aggregate_frames: events are not sorted by time");
    }
    prev_t = ev.t_us;
    if (ev.x < 0 || ev.y < 0 || ev.x >= cfg.sensor_width ||
        ev.y >= cfg.sensor_height) {
      throw OutOfBounds("event at (" + std::to_string(ev.x) + "," +
                        std::to_string(ev.y) + ") t=" + std::to_string(ev.t_us) +
                        " outside the sensor");
    }
    const auto k = static_cast<std::size_t>((ev.t_us - t0) / cfg.t_f_us);
    while (frames.size() <= k) {
      frames.emplace_back(cfg.sensor_width, cfg.sensor_height);
    }
    frames[k].set(ev.x, ev.y);
  }
  return frames;
}

}  // namespace imf
