#pragma once

#include <optional>
#include <string>

#include "finitekit/complexity/bounds.hpp"

namespace finitekit::complexity {

/// The seven finite classes, lowest first.
enum class Level { Const = 1, PolyLog, Linear, Poly, SemiPoly, Exp, Intr };

const char* level_name(Level level);
Level parse_level(const std::string& name);

/// A natural rank, or infinity (LogRank) / overflow (PolyRank).
struct Rank {
  bool finite = false;
  unsigned k = 0;

  static Rank infinite() { return {}; }
  static Rank of(unsigned k) { return {true, k}; }
  std::string to_string() const { return finite ? std::to_string(k) : "inf"; }
};

/// ExpRank is the rate 1/k, so it is rational; infinite when no grid rate passes.
struct ExpRankValue {
  bool finite = false;
  Rational value;
  std::string to_string() const;
};

struct ClassLabel {
  Level level = Level::Intr;
  std::optional<Rank> log_rank;
  std::optional<Rank> poly_rank;
  std::optional<ExpRankValue> exp_rank;

  std::string to_string() const;  // e.g. "Poly, PolyRank=3"
};

inline constexpr unsigned kPolyRankMax = 64;

/// Smallest k >= 1 with apparent_bound(Poly(k-1), h=2); infinite if none up to 64.
Rank poly_rank(const RuntimeTrace& trace, const Range& range);

/// Smallest k in 1..ceil(log2 n0) with oc_bound(LogPow(k)); infinite otherwise.
Rank log_rank(const RuntimeTrace& trace, const Range& range);

/// 1/k for the largest grid k whose rate 1/k passes oc_bound(Exp); the grid is
/// {1/64, ..., 1/2} together with {1, ..., n0}.
ExpRankValue exp_rank(const RuntimeTrace& trace, const Range& range);

/// First matching level in Const, PolyLog, Linear, Poly, SemiPoly, Exp order;
/// Intr otherwise. Needs n1 >= 4.
ClassLabel classify(const RuntimeTrace& trace, const Range& range);

}  // namespace finitekit::complexity
