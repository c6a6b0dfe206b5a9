#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finitekit/complexity/classify.hpp"
#include "finitekit/search/problem.hpp"
#include "finitekit/search/solver.hpp"
#include "finitekit/vm/enumerate.hpp"

namespace finitekit::search {

struct OptimalConfig {
  std::size_t program_max_len = 4;
  std::size_t hint_max_bytes = 2;
  std::uint64_t fuel_cap = 64;
  std::uint64_t trial_budget = std::uint64_t{1} << 32;  // program/hint pairs
  bool include_lookup = true;
  std::size_t lookup_memory_bytes = std::size_t{64} << 20;
  unsigned workers = 1;
};

/// Largest n0 whose input universe optimal_search will materialize.
inline constexpr std::uint64_t kMaxSearchN0 = 20;

struct Winner {
  HintedProgram program;
  std::uint64_t worst_fuel = 0;
  std::size_t program_length = 0;  // SIZE_MAX for the lookup solver
  std::size_t hint_bytes = 0;
  vm::Cursor cursor;               // enumeration position, bytecode only
  std::uint64_t hint_value = 0;    // assignment of the READ_HINT bits

  /// Strict order on (worst fuel, program length, hint length, enumeration index).
  bool better_than(const Winner& other) const;
};

struct OptimalResult {
  std::optional<Winner> best;
  std::uint64_t trials = 0;
  bool complete = false;
  vm::Cursor resume;  // next program to try when incomplete
  bool lookup_tried = false;
};

/// Exhaustive search over bytecode programs of length <= program_max_len
/// paired with hints of <= hint_max_bytes, plus the lookup solver when its
/// table fits. A pair counts only if it halts with a verifier-accepted
/// output on every universe input of length <= n0 within fuel_cap.
///
/// The hint part varies only the bits the program reads: READ_HINT operands
/// cover [0, min(8 * hint_max_bytes, program_max_len)), and each program
/// gets the shortest hint holding the bits it reads. Any other pair is matched
/// by a relabelled one that is no slower and needs no longer a hint.
///
/// The result does not depend on `workers`: candidates are compared under a
/// total order, and pruning only drops pairs slower than one already found.
///
/// When trial_budget runs out the result is incomplete and `resume` points at
/// the first untried program; pass the result back as `previous` to go on.
OptimalResult optimal_search(const ProblemStatement& problem, std::uint64_t n0,
                             const OptimalConfig& config,
                             const OptimalResult* previous = nullptr);

/// Worst fuel of `program` over `inputs`, or nullopt when it fails any of them.
std::optional<std::uint64_t> worst_case_fuel(const HintedProgram& program,
                                             const ProblemStatement& problem,
                                             const std::vector<BitString>& inputs,
                                             std::uint64_t fuel_cap);

struct DoublingRound {
  std::uint64_t n = 0;
  OptimalResult search;
  std::optional<complexity::ClassLabel> label;  // absent when no winner or n < 4
  std::vector<complexity::TracePoint> trace;
};

struct DoublingResult {
  std::vector<DoublingRound> rounds;
  bool stable = false;
  bool complete = true;  // false when the budget ran out first
  std::string note;
};

inline constexpr const char* kStabilityNote =
    "stability window is a heuristic stand-in for an explosion threshold that may not be knowable";

/// optimal_search at n_start, 2 n_start, 4 n_start, ... until the winner's
/// class label repeats for `window` consecutive doublings, a round fails,
/// or `max_rounds` / the shared trial budget run out. A round that hits a
/// size limit (Error budget) also ends the run as incomplete.
///
/// The trace of a winner at size n has cost(m) = running max, over lengths
/// m' <= m, of the fuel it uses on every bit string of length m' (capped at
/// fuel_cap); it is classified on [4..n].
DoublingResult doubling_search(const std::function<ProblemStatement(std::uint64_t)>& factory,
                               std::uint64_t n_start, std::size_t window,
                               const OptimalConfig& config, std::size_t max_rounds = 8);

std::vector<complexity::TracePoint> winner_trace(const HintedProgram& program, std::uint64_t n,
                                                 std::uint64_t fuel_cap);

}  // namespace finitekit::search
