#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finitekit/search/problem.hpp"
#include "finitekit/vm/enumerate.hpp"
#include "finitekit/vm/interpreter.hpp"

namespace finitekit::search {

enum class HintStrategy { exhaustive, inductive, mutation };

const char* strategy_name(HintStrategy s);
HintStrategy parse_strategy(const std::string& name);

struct CandidateStats {
  std::uint64_t pulls = 0;
  std::uint64_t successes = 0;  // evaluations correct on every golden
  std::uint64_t total_fuel = 0;
  std::uint64_t tp = 0, fn = 0, tn = 0, fp = 0;
  double reward_sum = 0;

  /// 1 when there were no positives (negatives) to score.
  double sensitivity() const { return tp + fn ? double(tp) / double(tp + fn) : 1.0; }
  double specificity() const { return tn + fp ? double(tn) / double(tn + fp) : 1.0; }
  bool operator==(const CandidateStats&) const = default;
};

struct Candidate {
  std::uint64_t id = 0;
  vm::Bytecode program;
  HintStrategy strategy = HintStrategy::exhaustive;
  vm::Hint hint;
  std::uint64_t hint_counter = 0;  // next exhaustive hint value
  std::uint64_t best_correct = 0;  // most goldens any of its hints has passed
  std::uint64_t misses = 0;        // consecutive evaluations below the accuracy bar
  CandidateStats stats;
  bool operator==(const Candidate&) const = default;
};

struct InputOutcome {
  std::size_t golden = 0;  // index into the size-sorted goldens
  vm::Status status = vm::Status::trapped;
  bool correct = false;
  std::uint64_t fuel = 0;
  std::uint64_t summary_hash = 0;  // hash of the run digest; 0 without snapshots
};

struct EvalRecord {
  std::uint64_t candidate = 0;
  std::vector<InputOutcome> outcomes;
  std::uint64_t total_fuel = 0;
  std::uint64_t correct = 0;
  std::uint64_t tp = 0, fn = 0, tn = 0, fp = 0;
  double reward = 0;  // correct fraction times (1 - mean fuel / fuel cap)

  bool all_correct() const { return correct == outcomes.size(); }
};

struct AdequateEntry {
  std::uint64_t candidate = 0;
  vm::Bytecode program;
  vm::Hint hint;
  std::uint64_t worst_fuel = 0;
  std::uint64_t step = 0;
  bool operator==(const AdequateEntry&) const = default;
};

struct StepLog {
  std::uint64_t step = 0;
  std::uint64_t candidate = 0;
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  std::uint64_t fuel = 0;
  double reward = 0;
  std::string action;  // "eval", "adequate" or "tabu"
  bool operator==(const StepLog&) const = default;
};

struct SearchConfig {
  vm::EnumConfig programs{3, 1, 8};
  std::size_t hint_bytes = 1;
  std::uint64_t fuel_cap = 64;
  std::uint64_t snapshot_every = 0;
  double epsilon = 0.1;
  double exploration = 1.4142135623730951;  // UCB1 constant
  std::uint64_t hint_patience = 16;  // inaccurate hints tolerated before a hinted program is retired
  bool operator==(const SearchConfig&) const = default;
};

struct SearchState {
  SearchConfig config;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  std::uint64_t next_id = 0;
  std::vector<Candidate> promising;
  std::map<std::uint64_t, AdequateEntry> adequate;  // input size -> first verified entry
  std::set<std::uint64_t> tabu;                      // program/hint digests
  vm::Cursor cursor;                                 // next enumerator program
  bool enumeration_exhausted = false;
  std::array<std::uint64_t, 17> opcode_in_correct{};  // per opcode, over all eval steps
  std::array<std::uint64_t, 17> opcode_in_wrong{};
  std::vector<StepLog> log;

  bool operator==(const SearchState&) const = default;
};

SearchState make_state(const SearchConfig& config, std::uint64_t seed);

/// Adds a hand-written candidate to the promising set and returns its id.
std::uint64_t add_candidate(SearchState& state, vm::Bytecode program, HintStrategy strategy,
                            vm::Hint hint = {});

std::uint64_t pair_digest(const vm::Bytecode& program, const vm::Hint& hint);

/// Untried candidates first (lowest id); otherwise, with probability epsilon a
/// fresh enumerator program is added and chosen, else the UCB1 maximum.
/// Throws Error(exhausted) when nothing is left to pick.
std::uint64_t select_candidate(SearchState& state, std::uint64_t seed);

/// Runs on the goldens sorted by input length (stable). Decision goldens are
/// exact one-bit outputs; a missing answer counts as the wrong one.
EvalRecord evaluate(const Candidate& candidate, const std::vector<GoldenDatum>& goldens,
                    std::uint64_t fuel_cap, std::uint64_t snapshot_every = 0);

/// One round: select, materialize a hint, evaluate, then fold the record in.
/// An inaccurate program/hint pair goes to the tabu set. The candidate is
/// retired with it, at once when it ignores its hint and after hint_patience
/// consecutive misses otherwise. Every golden size answered in full gets an
/// adequate entry unless one exists.
void search_step(SearchState& state, const ProblemStatement& problem,
                 const std::vector<GoldenDatum>& goldens);

const Candidate* find_candidate(const SearchState& state, std::uint64_t id);

}  // namespace finitekit::search
