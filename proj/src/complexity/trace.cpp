#include "finitekit/complexity/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "finitekit/util/error.hpp"

namespace finitekit::complexity {

Range::Range(std::uint64_t lo, std::uint64_t hi) : n1(lo), n0(hi) {
  if (lo < 2 || lo > hi)
    throw Error(ErrorCode::input,
                "invalid range " + std::to_string(lo) + ".." + std::to_string(hi) +
                    " (need 2 <= n1 <= n0)");
}

std::string Range::to_string() const { return std::to_string(n1) + ".." + std::to_string(n0); }

static std::uint64_t parse_u64(std::string_view text, const std::string& context) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw Error(ErrorCode::input, context + ": expected an unsigned integer, got '" +
                                      std::string(text) + "'");
  return value;
}

Range Range::parse(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::input, "range must look like n1..n0");
  return Range(parse_u64(std::string_view(text).substr(0, dots), "range"),
               parse_u64(std::string_view(text).substr(dots + 2), "range"));
}

const char* grid_name(Grid grid) { return grid == Grid::dense ? "dense" : "sampled"; }

RuntimeTrace::RuntimeTrace(std::vector<TracePoint> points, Grid grid, std::string label)
    : points_(std::move(points)), grid_(grid), label_(std::move(label)) {
  if (points_.empty()) throw Error(ErrorCode::input, "trace has no points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.cost < 1)
      throw Error(ErrorCode::input, "cost must be >= 1 at n=" + std::to_string(p.n));
    if (i == 0) continue;
    const auto& prev = points_[i - 1];
    if (p.n <= prev.n)
      throw Error(ErrorCode::input, "n values must be strictly increasing at n=" + std::to_string(p.n));
    if (p.cost < prev.cost)
      throw Error(ErrorCode::monotonicity, "monotonicity violated at n=" + std::to_string(p.n));
  }
  if (grid_ == Grid::dense && points_.back().n - points_.front().n + 1 != points_.size()) {
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (points_[i].n != points_[i - 1].n + 1)
        throw Error(ErrorCode::coverage,
                    "dense trace is missing n=" + std::to_string(points_[i - 1].n + 1));
  }
}

RuntimeTrace RuntimeTrace::infer(std::vector<TracePoint> points, std::string label) {
  bool contiguous = true;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].n != points[i - 1].n + 1) contiguous = false;
  return RuntimeTrace(std::move(points), contiguous ? Grid::dense : Grid::sampled, std::move(label));
}

RuntimeTrace RuntimeTrace::tabulate(const std::vector<std::uint64_t>& sizes,
                                    const std::function<BigInt(std::uint64_t)>& f,
                                    std::string label) {
  std::vector<TracePoint> pts;
  pts.reserve(sizes.size());
  for (auto n : sizes) pts.push_back({n, f(n)});
  return infer(std::move(pts), std::move(label));
}

RuntimeTrace RuntimeTrace::tabulate(std::uint64_t first, std::uint64_t last,
                                    const std::function<BigInt(std::uint64_t)>& f,
                                    std::string label) {
  std::vector<TracePoint> pts;
  pts.reserve(last - first + 1);
  for (auto n = first; n <= last; ++n) pts.push_back({n, f(n)});
  return RuntimeTrace(std::move(pts), Grid::dense, std::move(label));
}

RuntimeTrace RuntimeTrace::read_csv(std::istream& in, std::string label) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<TracePoint> pts;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "n,cost")
        throw Error(ErrorCode::input, "line 1: expected header 'n,cost'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    const std::string where = "line " + std::to_string(lineno);
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw Error(ErrorCode::input, where + ": expected two fields");
    const auto n = parse_u64(std::string_view(line).substr(0, comma), where);
    const std::string cost_text = line.substr(comma + 1);
    if (cost_text.empty() || cost_text.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::input, where + ": expected an unsigned integer, got '" + cost_text + "'");
    if (!pts.empty() && n <= pts.back().n)
      throw Error(ErrorCode::input, where + ": rows must be sorted by strictly increasing n");
    pts.push_back({n, BigInt(cost_text)});
  }
  if (!header_seen) throw Error(ErrorCode::input, "line 1: expected header 'n,cost'");
  return infer(std::move(pts), std::move(label));
}

RuntimeTrace RuntimeTrace::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::input, "cannot open " + path);
  return read_csv(in, path);
}

void RuntimeTrace::write_csv(std::ostream& out) const {
  out << "n,cost\n";
  for (const auto& p : points_) out << p.n << ',' << p.cost << '\n';
}

std::size_t RuntimeTrace::lower_index(std::uint64_t value) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), value,
                             [](const TracePoint& p, std::uint64_t v) { return p.n < v; });
  return static_cast<std::size_t>(it - points_.begin());
}

std::span<const TracePoint> RuntimeTrace::covered(std::uint64_t lo, std::uint64_t hi) const {
  if (lo < first_n())
    throw Error(ErrorCode::coverage, "trace does not cover n=" + std::to_string(lo));
  if (hi > last_n())
    throw Error(ErrorCode::coverage, "trace does not cover n=" + std::to_string(hi));
  const auto b = lower_index(lo);
  auto e = lower_index(hi);
  if (e < points_.size() && points_[e].n == hi) ++e;
  // Dense traces are gap free by construction, so the span is complete.
  if (b == e)
    throw Error(ErrorCode::coverage, "trace has no sample in " + std::to_string(lo) + ".." +
                                         std::to_string(hi));
  return {points_.data() + b, e - b};
}

}  // namespace finitekit::complexity
