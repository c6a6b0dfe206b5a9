#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finitekit/complexity/growth.hpp"
#include "finitekit/problems/sat.hpp"
#include "finitekit/util/bits.hpp"

namespace finitekit::search {

using complexity::GrowthFormula;

struct Accuracy {
  Rational sensitivity{1};
  Rational specificity{1};
};

/// Size regimes v1 <= v2 <= v3 <= v4, from "every answer precomputable" up to
/// "only some instances solvable".
struct VerifiabilityThresholds {
  std::uint64_t v1 = 0, v2 = 0, v3 = 0, v4 = 0;
  void validate() const;
};

enum class MachineKind { classical };

/// The nine-field statement: verifier, universe, n0, output bound, accuracy,
/// proof and completeness flags, machine kind, algorithm size bound.
struct ProblemStatement {
  std::string name;
  std::function<bool(const BitString& input, const BitString& output)> verifier;
  std::function<bool(const BitString& input)> in_universe;
  std::uint64_t n0 = 0;
  GrowthFormula output_bound = GrowthFormula::constant(1);
  std::size_t output_bits = 1;
  Accuracy accuracy;
  bool proof_required = false;
  bool complete = true;
  MachineKind machine = MachineKind::classical;
  GrowthFormula algorithm_size_bound = GrowthFormula::poly(1);
  VerifiabilityThresholds thresholds;

  bool decision() const { return output_bits == 1; }
  /// Bit strings of length <= n accepted by in_universe, shortest first.
  std::vector<BitString> universe(std::uint64_t n) const;
  void validate() const;
};

/// Exact output, or numeric bounds on the output read as an unsigned
/// integer (most significant bit first).
struct GoldenDatum {
  enum class Kind { exact, lower, upper, range };
  BitString input;
  Kind kind = Kind::exact;
  BitString exact;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;

  static GoldenDatum exact_output(BitString input, BitString output);
  static GoldenDatum bounds(BitString input, std::optional<std::uint64_t> lower,
                            std::optional<std::uint64_t> upper);
  bool accepts(const BitString& output) const;
};

const char* golden_kind_name(GoldenDatum::Kind kind);

/// Exact goldens for every universe input of length <= n, answered with the
/// smallest output the verifier accepts.
std::vector<GoldenDatum> goldens_by_enumeration(const ProblemStatement& p, std::uint64_t n);

/// Smallest output (as an output_bits-wide string) the verifier accepts.
std::optional<BitString> first_accepted_output(const ProblemStatement& p, const BitString& input);

// Problem packs. Decision problems answer with one bit.
ProblemStatement first_bit_problem(std::uint64_t n0);    // nonempty inputs; answer = input[0]
ProblemStatement all_ones_problem(std::uint64_t n0);     // inputs of length exactly n0
ProblemStatement parity_problem(std::uint64_t n0);       // all inputs of length <= n0
ProblemStatement constant_true_problem(std::uint64_t n0);
/// Input bit j selects clause j of `mother`; answer = satisfiable.
ProblemStatement sat_selector_problem(std::uint64_t n0, problems::Cnf3Instance mother);
problems::Cnf3Instance sat_selection(const problems::Cnf3Instance& mother, const BitString& input);
/// The preferred answer depends on which round it is asked at: solvable by a
/// short program on even powers of two, unsatisfiable by any on odd ones.
ProblemStatement alternating_problem(std::uint64_t n0);

}  // namespace finitekit::search
