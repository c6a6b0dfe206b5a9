#include "finitekit/thresholds/thresholds.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "finitekit/util/error.hpp"

namespace finitekit::thresholds {

using complexity::classify;
using complexity::Range;

namespace {

// Classifies [lo..ends[i]] for every i; result[i] is the level.
std::vector<Level> classify_prefixes(const RuntimeTrace& trace, std::uint64_t lo,
                                     const std::vector<std::uint64_t>& ends, unsigned workers) {
  std::vector<Level> out(ends.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < ends.size(); i += stride)
      out[i] = classify(trace, Range(lo, ends[i])).level;
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(ends.size())));
  if (workers <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<std::uint64_t> points_between(const RuntimeTrace& trace, std::uint64_t lo,
                                          std::uint64_t hi) {
  std::vector<std::uint64_t> ns;
  for (const auto& p : trace.points())
    if (p.n >= lo && p.n <= hi) ns.push_back(p.n);
  return ns;
}

}  // namespace

ThresholdResult explode(const RuntimeTrace& trace, Level level, std::uint64_t n1,
                        unsigned workers) {
  if (n1 < 4) throw Error(ErrorCode::input, "explode needs n1 >= 4");
  trace.covered(n1, n1);
  ThresholdResult r;
  r.grid = trace.grid();
  const auto ends = points_between(trace, n1, trace.last_n());
  // Evaluate in chunks so an early hit does not pay for the whole trace.
  const std::size_t chunk = std::max<std::size_t>(1, workers) * 8;
  for (std::size_t start = 0; start < ends.size(); start += chunk) {
    std::vector<std::uint64_t> part(ends.begin() + start,
                                    ends.begin() + std::min(ends.size(), start + chunk));
    const auto levels = classify_prefixes(trace, n1, part, workers);
    for (std::size_t i = 0; i < part.size(); ++i) {
      r.scanned_up_to = part[i];
      if (levels[i] > level) {
        r.found = true;
        r.z = part[i];
        return r;
      }
    }
  }
  return r;
}

ThresholdResult collapse(const RuntimeTrace& trace, Level level, std::uint64_t n1,
                         unsigned workers) {
  const auto base_index = trace.lower_index(4);
  if (base_index == trace.points().size())
    throw Error(ErrorCode::coverage, "trace has no point with n >= 4");
  const auto base = trace.points()[base_index].n;
  if (n1 < base) throw Error(ErrorCode::input, "collapse needs n1 >= " + std::to_string(base));
  trace.covered(base, n1);
  ThresholdResult r;
  r.grid = trace.grid();
  auto ends = points_between(trace, base, n1);
  std::reverse(ends.begin(), ends.end());
  const auto levels = classify_prefixes(trace, base, ends, workers);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    r.scanned_up_to = ends[i];
    if (levels[i] > level) break;
    r.found = true;
    r.z = ends[i];
  }
  return r;
}

DoublingEvidence doubling_evidence(const RuntimeTrace& trace, const complexity::GrowthFormula& g,
                                   std::uint64_t n0) {
  DoublingEvidence ev;
  ev.note = kDoublingNote;
  const auto base = std::max<std::uint64_t>(2, trace.first_n());
  for (const auto& p : trace.points()) {
    if (p.n < n0 || p.n < base) continue;
    if (2 * p.n > trace.last_n()) break;
    DoublingPair pair;
    pair.n = p.n;
    pair.doubled = 2 * p.n;
    pair.premise = complexity::oc_bound(trace, g, Range(base, p.n)).holds;
    pair.conclusion = complexity::oc_bound(trace, g, Range(base, 2 * p.n)).holds;
    if (!pair.passed() && ev.stable) {
      ev.stable = false;
      ev.first_failure = p.n;
    }
    ev.pairs.push_back(pair);
  }
  return ev;
}

std::string RankExpr::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::poly: os << "PolyRank(" << value << ")"; break;
    case Kind::log: os << "LogRank(" << value << ")"; break;
    case Kind::exp: os << "ExpRank(" << value << ")"; break;
  }
  return os.str();
}

ComposedRank compose_ranks(const RankExpr& call_count, const RankExpr& callee) {
  if (call_count.kind != callee.kind)
    throw Error(ErrorCode::unsupported,
                "cannot compose " + call_count.to_string() + " with " + callee.to_string());
  if (call_count.value < 0 || callee.value < 0)
    throw Error(ErrorCode::unsupported, "ranks must be non-negative");
  return {RankExpr{callee.kind, call_count.value + callee.value}, true};
}

}  // namespace finitekit::thresholds
