#include "finitekit/search/lookup.hpp"

#include "finitekit/util/error.hpp"

namespace finitekit::search {

LookupBuild build_lookup_hint(const ProblemStatement& problem, std::uint64_t n0,
                              std::size_t memory_budget_bytes) {
  if (n0 > 40) throw Error(ErrorCode::budget, "lookup tables are limited to n0 <= 40");
  const std::uint64_t inputs = (std::uint64_t{2} << n0) - 1;
  const unsigned key_bits = static_cast<unsigned>(n0 + 1);
  const unsigned out_bits = static_cast<unsigned>(problem.output_bits);
  const std::uint64_t bytes = (48 + inputs * (key_bits + out_bits) + 7) / 8;
  if (bytes > memory_budget_bytes)
    throw Error(ErrorCode::budget, "lookup table needs " + std::to_string(bytes) +
                                       " bytes, budget is " + std::to_string(memory_budget_bytes));
  std::vector<std::pair<std::uint64_t, BitString>> entries;
  entries.reserve(inputs);
  for (const auto& in : problem.universe(n0)) {
    auto out = first_accepted_output(problem, in);
    if (!out)
      throw Error(ErrorCode::inconsistent,
                  problem.name + ": verifier rejects every output for '" + bits_to_string(in) + "'");
    entries.emplace_back(canonical_index(in), std::move(*out));
  }
  LookupBuild b;
  b.entries = entries.size();
  b.solver.kind = HintedProgram::Kind::lookup;
  b.solver.hint = encode_lookup_table(key_bits, out_bits, entries);
  return b;
}

Reduction reduce_to_decision(const std::function<bool(std::uint64_t)>& exists_below,
                             std::uint64_t universe, bool check_top) {
  if (universe == 0) throw Error(ErrorCode::input, "empty output universe");
  Reduction r;
  if (check_top) {
    ++r.probes;
    if (!exists_below(universe)) throw Error(ErrorCode::inconsistent, "no correct output in the universe");
  }
  // Smallest x in [1, universe] with exists_below(x); the answer is x - 1.
  std::uint64_t lo = 1, hi = universe;
  if (universe == 1 && !check_top) {
    ++r.probes;
    if (!exists_below(1)) throw Error(ErrorCode::inconsistent, "no correct output in the universe");
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    ++r.probes;
    if (exists_below(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  r.value = lo - 1;
  return r;
}

}  // namespace finitekit::search
