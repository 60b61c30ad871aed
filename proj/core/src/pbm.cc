#include "imf/pbm.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "imf/error.h"

namespace imf {
namespace {

// Reads one header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int parse_dim(const std::string& token) {
  if (token.empty() ||
      !std::all_of(token.begin(), token.end(),
                   [](unsigned char ch) { return std::isdigit(ch); }) ||
      token.size() > 6) {
    throw Error("PBM: bad dimension '" + token + "'");
  }
  return std::stoi(token);
}

}  // namespace

void write_pbm(std::ostream& out, const BinaryFrame& frame) {
  out << "P4\n" << frame.width() << ' ' << frame.height() << '\n';
  const int row_bytes = (frame.width() + 7) / 8;
  std::string row(static_cast<std::size_t>(row_bytes), '\0');
  for (int y = 0; y < frame.height(); ++y) {
    std::fill(row.begin(), row.end(), '\0');
    for (int x = 0; x < frame.width(); ++x) {
      if (frame.get(x, y)) row[x / 8] |= static_cast<char>(0x80u >> (x % 8));
    }
    out.write(row.data(), row_bytes);
  }
}

BinaryFrame read_pbm(std::istream& in) {
  if (next_token(in) != "P4") throw Error("PBM: missing P4 magic");
  const int width = parse_dim(next_token(in));
  const int height = parse_dim(next_token(in));
  // next_token consumed the single whitespace byte that ends the header.
  BinaryFrame frame(width, height);
  const int row_bytes = (width + 7) / 8;
  std::string row(static_cast<std::size_t>(row_bytes), '\0');
  for (int y = 0; y < height; ++y) {
    if (!in.read(row.data(), row_bytes)) throw Error("PBM: truncated raster");
    for (int x = 0; x < width; ++x) {
      if (static_cast<unsigned char>(row[x / 8]) & (0x80u >> (x % 8))) {
        frame.set(x, y);
      }
    }
  }
  return frame;
}

void write_pbm_file(const std::filesystem::path& path, const BinaryFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_pbm(out, frame);
  if (!out) throw Error("write failed: " + path.string());
}

BinaryFrame read_pbm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_pbm(in);
}

std::vector<BinaryFrame> read_pbm_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pbm") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<BinaryFrame> frames;
  frames.reserve(paths.size());
  for (const auto& p : paths) frames.push_back(read_pbm_file(p));
  return frames;
}

}  // namespace imf
