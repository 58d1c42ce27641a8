#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lppsim {

/// Lattice point on Z^2.
struct Point {
  int x{0};
  int y{0};

  friend constexpr bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend constexpr bool operator!=(Point a, Point b) { return !(a == b); }
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

inline constexpr Point kE1{1, 0};
inline constexpr Point kE2{0, 1};

/// An up-right (or down-left, depending on construction) nearest-neighbor path.
struct LatticePath {
  std::vector<Point> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  Point front() const { return vertices.front(); }
  Point back() const { return vertices.back(); }
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a truncation window's argmax (or non-negligible mass) lands on
/// the window edge; the caller is expected to enlarge the window and retry.
struct WindowTooSmallError : std::runtime_error {
  int offending_index;
  explicit WindowTooSmallError(const std::string& what, int index)
      : std::runtime_error(what), offending_index(index) {}
};

struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterRangeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace lppsim
