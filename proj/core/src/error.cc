#include "imf/error.h"

namespace imf {

MalformedLine::MalformedLine(std::size_t line_no, const std::string& reason)
    : Error("line " + std::to_string(line_no) + ": " + reason),
      line_no_(line_no) {}

NonMonotonicTimestamp::NonMonotonicTimestamp(std::size_t line_no)
    : Error("line " + std::to_string(line_no) +
            ": timestamp decreases relative to the previous event"),
      line_no_(line_no) {}

}  // namespace imf
