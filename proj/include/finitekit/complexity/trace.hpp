#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "finitekit/complexity/numeric.hpp"

namespace finitekit::complexity {

/// Closed size interval [n1, n0] with 2 <= n1 <= n0.
struct Range {
  std::uint64_t n1 = 2;
  std::uint64_t n0 = 2;

  Range() = default;
  Range(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t midpoint() const { return (n1 + n0) / 2; }
  std::string to_string() const;  // "n1..n0"
  static Range parse(const std::string& text);
};

struct TracePoint {
  std::uint64_t n;
  BigInt cost;
};

/// Which sizes a trace claims to cover. A dense trace has a point at every
/// integer between its first and last n; a sampled trace only at its points,
/// and quantifiers over a range then run over the sampled points only.
enum class Grid { dense, sampled };

/// Worst-case operation counts per size. Construction enforces strictly
/// increasing n, cost >= 1 and non-decreasing cost.
class RuntimeTrace {
 public:
  RuntimeTrace(std::vector<TracePoint> points, Grid grid, std::string label = {});

  /// Grid is dense when the n values are contiguous, sampled otherwise.
  static RuntimeTrace infer(std::vector<TracePoint> points, std::string label = {});

  static RuntimeTrace tabulate(const std::vector<std::uint64_t>& sizes,
                               const std::function<BigInt(std::uint64_t)>& f,
                               std::string label = {});
  static RuntimeTrace tabulate(std::uint64_t first, std::uint64_t last,
                               const std::function<BigInt(std::uint64_t)>& f,
                               std::string label = {});

  /// CSV with header `n,cost`. Malformed rows raise Error(input) naming the line.
  static RuntimeTrace read_csv(std::istream& in, std::string label = {});
  static RuntimeTrace load_csv(const std::string& path);
  void write_csv(std::ostream& out) const;

  const std::vector<TracePoint>& points() const { return points_; }
  Grid grid() const { return grid_; }
  const std::string& label() const { return label_; }
  std::uint64_t first_n() const { return points_.front().n; }
  std::uint64_t last_n() const { return points_.back().n; }

  /// Points with n in [lo, hi]. Throws Error(coverage) when the trace cannot
  /// answer for that interval: outside the traced span, or for dense traces,
  /// missing an integer.
  std::span<const TracePoint> covered(std::uint64_t lo, std::uint64_t hi) const;

  /// Index of the first point with n >= value (points().size() if none).
  std::size_t lower_index(std::uint64_t value) const;

 private:
  std::vector<TracePoint> points_;
  Grid grid_;
  std::string label_;
};

const char* grid_name(Grid grid);

}  // namespace finitekit::complexity
