#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "imf/binary_frame.h"

namespace imf {

// Binary PBM ("P4"): rows packed MSB-first, each row padded to a byte,
// 1 = set pixel.
void write_pbm(std::ostream& out, const BinaryFrame& frame);
BinaryFrame read_pbm(std::istream& in);

void write_pbm_file(const std::filesystem::path& path, const BinaryFrame& frame);
BinaryFrame read_pbm_file(const std::filesystem::path& path);

// Every *.pbm in `dir`, in lexicographic filename order.
std::vector<BinaryFrame> read_pbm_directory(const std::filesystem::path& dir);

}  // namespace imf
