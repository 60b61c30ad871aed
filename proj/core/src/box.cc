#include "imf/box.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "imf/error.h"

namespace imf {
namespace {

bool to_int(std::string_view s, int& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

void write_annotations(std::ostream& out, const std::vector<Annotation>& rows) {
  out << "frame_index,track_id,class,x,y,w,h\n";
  for (const Annotation& a : rows) {
    out << a.frame_index << ',' << a.track_id << ',' << a.label << ',' << a.box.x << ','
        << a.box.y << ',' << a.box.w << ',' << a.box.h << '\n';
  }
}

std::vector<Annotation> read_annotations(std::istream& in) {
  std::vector<Annotation> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (body.empty() || body.front() == '#') continue;
    if (line_no == 1 && body.starts_with("frame_index")) continue;

    std::string_view fields[7];
    int count = 0;
    std::size_t start = 0;
    while (count < 7) {
      const std::size_t comma = body.find(',', start);
      fields[count++] = body.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
      if (count == 7) throw MalformedLine(line_no, "expected 7 fields");
    }
    if (count != 7) throw MalformedLine(line_no, "expected 7 fields");

    Annotation a;
    a.label = std::string(fields[2]);
    if (!to_int(fields[0], a.frame_index) || !to_int(fields[1], a.track_id) ||
        !to_int(fields[3], a.box.x) || !to_int(fields[4], a.box.y) ||
        !to_int(fields[5], a.box.w) || !to_int(fields[6], a.box.h) || a.box.w < 1 ||
        a.box.h < 1 || a.frame_index < 0) {
      throw MalformedLine(line_no, "bad annotation field");
    }
    rows.push_back(std::move(a));
  }
  return rows;
}

void write_annotations_file(const std::filesystem::path& path,
                            const std::vector<Annotation>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_annotations(out, rows);
}

std::vector<Annotation> read_annotations_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_annotations(in);
}

}  // namespace imf
