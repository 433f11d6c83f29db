#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dyncut {

using VertexId = std::uint32_t;
using Weight = std::int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr Weight kUnbounded = std::numeric_limits<Weight>::max();

/// Thrown on invalid graph updates (self-loops, nonpositive weights,
/// deleting an absent edge, out-of-range vertices).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the text readers; carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dyncut
