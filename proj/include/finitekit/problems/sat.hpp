#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "finitekit/complexity/numeric.hpp"
#include "finitekit/util/bits.hpp"

namespace finitekit::problems {

using Clause = std::array<std::int32_t, 3>;  // signed, 1-based literals
using Assignment = std::vector<std::uint8_t>;

/// 3-CNF formula. Every clause names 3 distinct variables in [1..n].
struct Cnf3Instance {
  unsigned n = 0;
  std::vector<Clause> clauses;

  void validate() const;  // throws Error(input)

  /// 8 bits of n, 8 bits of clause count, then per literal a sign bit
  /// (1 = negated) and the 0-based variable index in index_width(n) bits.
  BitString encode() const;
  static Cnf3Instance decode(const BitString& bits);
  static unsigned index_width(unsigned n);

  std::string to_dimacs() const;
  static Cnf3Instance read_dimacs(std::istream& in);
  static Cnf3Instance parse_dimacs(const std::string& text);

  bool operator==(const Cnf3Instance&) const = default;
};

bool clause_satisfied(const Clause& c, const Assignment& a);
bool sat_verify(const Cnf3Instance& inst, const Assignment& a);

struct SatVerdict {
  enum class Kind { sat, unsat, timeout };
  Kind kind = Kind::timeout;
  Assignment model;  // sat only
  std::uint64_t steps = 0;
};

const char* verdict_name(SatVerdict::Kind k);

/// DPLL with unit propagation. Branches on the lowest-index unassigned
/// variable, true first; stops as soon as every clause is satisfied and leaves
/// the remaining variables false. One step = one variable assignment.
SatVerdict sat_decide_baseline(const Cnf3Instance& inst, std::uint64_t step_budget);

/// Model count via the truth-table kernel; n <= 30.
std::uint64_t sat_count_models(const Cnf3Instance& inst);
/// First model in assignment-index order, via the truth-table kernel.
std::optional<Assignment> sat_truth_table_model(const Cnf3Instance& inst);

enum class GenMode { uniform, planted, subset_of_mother };

struct Generated {
  Cnf3Instance instance;
  std::optional<Assignment> planted;
};

/// Deterministic per seed. Uniform and planted draw distinct clauses; subset
/// mode keeps m mother clauses in mother order.
Generated sat_generate(unsigned n, std::size_t m, std::uint64_t seed, GenMode mode,
                       const Cnf3Instance* mother = nullptr);

/// All 8 sign patterns over x1, x2, x3; unsatisfiable as a whole.
Cnf3Instance full_mother3();

/// Interaction graph disconnected, or some variable unused.
bool sat_is_decomposable(const Cnf3Instance& inst);

/// C(4n(n-1)(n-2)/6, 4n) * 2^(4n); n >= 3.
BigInt sat_universe_size(unsigned n);
BigInt binomial(const BigInt& n, std::uint64_t k);

}  // namespace finitekit::problems
