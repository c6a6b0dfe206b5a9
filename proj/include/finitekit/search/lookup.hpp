#pragma once

#include <cstdint>
#include <functional>

#include "finitekit/search/problem.hpp"
#include "finitekit/search/solver.hpp"

namespace finitekit::search {

struct LookupBuild {
  HintedProgram solver;  // kind lookup; solver.hint is the table
  std::uint64_t entries = 0;
};

/// Answer table for every universe input of length <= n0 (at most
/// 2^(n0+1) - 1 of them). Each entry holds the smallest output the verifier
/// accepts. The memory check assumes the full 2^(n0+1) - 1 entries.
LookupBuild build_lookup_hint(const ProblemStatement& problem, std::uint64_t n0,
                              std::size_t memory_budget_bytes = std::size_t{64} << 20);

struct Reduction {
  std::uint64_t value = 0;
  unsigned probes = 0;
};

/// Minimal correct output in [0, universe) from an oracle answering "is there
/// a correct output below x?". Uses at most ceil(log2 universe) probes under
/// the assumption that some output is correct; with `check_top` one more probe
/// at the top confirms that and throws Error(inconsistent) if it fails.
Reduction reduce_to_decision(const std::function<bool(std::uint64_t)>& exists_below,
                             std::uint64_t universe, bool check_top = false);

}  // namespace finitekit::search
