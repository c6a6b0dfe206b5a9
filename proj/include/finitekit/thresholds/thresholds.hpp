#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finitekit/complexity/classify.hpp"

namespace finitekit::thresholds {

using complexity::Level;
using complexity::RuntimeTrace;

struct ThresholdResult {
  bool found = false;
  std::optional<std::uint64_t> z;
  std::uint64_t scanned_up_to = 0;
  complexity::Grid grid = complexity::Grid::dense;  // prefixes are evaluated at grid points only
};

/// First trace point z >= n1 where classify on [n1..z] lands strictly above
/// `level`. `workers` prefix classifications run concurrently.
ThresholdResult explode(const RuntimeTrace& trace, Level level, std::uint64_t n1,
                        unsigned workers = 1);

/// Smallest trace point z <= n1 such that classify on [base..n0] is at or below
/// `level` for every trace point n0 in [z..n1]. base is the first point >= 4.
ThresholdResult collapse(const RuntimeTrace& trace, Level level, std::uint64_t n1,
                         unsigned workers = 1);

struct DoublingPair {
  std::uint64_t n = 0;
  std::uint64_t doubled = 0;
  bool premise = false;     // OC on [base..n]
  bool conclusion = false;  // OC on [base..2n]
  bool passed() const { return !premise || conclusion; }
};

struct DoublingEvidence {
  bool stable = true;
  std::vector<DoublingPair> pairs;
  std::optional<std::uint64_t> first_failure;
  std::string note;
};

/// For every trace point n' >= n0 with 2n' inside the trace, checks that OC
/// against g on [base..n'] carries over to [base..2n']. Finite evidence only.
DoublingEvidence doubling_evidence(const RuntimeTrace& trace, const complexity::GrowthFormula& g,
                                   std::uint64_t n0);

inline constexpr const char* kDoublingNote =
    "finite evidence for the doubling premise over the traced sizes; not a proof";

struct RankExpr {
  enum class Kind { poly, log, exp };
  Kind kind;
  Rational value;  // k for poly/log, the rate 1/k for exp

  static RankExpr poly(unsigned k) { return {Kind::poly, Rational(k)}; }
  static RankExpr log(unsigned k) { return {Kind::log, Rational(k)}; }
  static RankExpr exp(Rational rate) { return {Kind::exp, std::move(rate)}; }
  std::string to_string() const;
  bool operator==(const RankExpr&) const = default;
};

struct ComposedRank {
  RankExpr rank;
  bool upper_bound = true;
};

/// Rank of running `callee` as many times as `call_count` describes.
ComposedRank compose_ranks(const RankExpr& call_count, const RankExpr& callee);

}  // namespace finitekit::thresholds
