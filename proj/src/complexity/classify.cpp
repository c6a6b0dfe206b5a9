#include "finitekit/complexity/classify.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "finitekit/util/error.hpp"

namespace finitekit::complexity {

const char* level_name(Level level) {
  switch (level) {
    case Level::Const: return "Const";
    case Level::PolyLog: return "PolyLog";
    case Level::Linear: return "Linear";
    case Level::Poly: return "Poly";
    case Level::SemiPoly: return "SemiPoly";
    case Level::Exp: return "Exp";
    case Level::Intr: return "Intr";
  }
  return "?";
}

Level parse_level(const std::string& name) {
  for (int i = 1; i <= 7; ++i) {
    const auto level = static_cast<Level>(i);
    if (name == level_name(level)) return level;
  }
  throw Error(ErrorCode::input, "unknown class level '" + name + "'");
}

std::string ExpRankValue::to_string() const {
  if (!finite) return "inf";
  std::ostringstream os;
  os << value;
  return os.str();
}

std::string ClassLabel::to_string() const {
  std::string out = level_name(level);
  switch (level) {
    case Level::Const:
    case Level::Linear:
      break;
    case Level::PolyLog:
      if (log_rank) out += ", LogRank=" + log_rank->to_string();
      break;
    case Level::Poly:
    case Level::SemiPoly:
      if (poly_rank) out += ", PolyRank=" + poly_rank->to_string();
      break;
    case Level::Exp:
    case Level::Intr:
      if (exp_rank) out += ", ExpRank=" + exp_rank->to_string();
      break;
  }
  return out;
}

static unsigned ceil_log2(std::uint64_t n) {
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

Rank poly_rank(const RuntimeTrace& trace, const Range& range) {
  for (unsigned k = 1; k <= kPolyRankMax; ++k)
    if (apparent_bound(trace, GrowthFormula::poly(k - 1), Rational(2), range).holds)
      return Rank::of(k);
  return Rank::infinite();
}

Rank log_rank(const RuntimeTrace& trace, const Range& range) {
  if (range.n1 < 4) throw Error(ErrorCode::input, "LogRank needs n1 >= 4");
  const unsigned kmax = ceil_log2(range.n0);
  for (unsigned k = 1; k <= kmax; ++k)
    if (oc_bound(trace, GrowthFormula::log_pow(k), range).holds) return Rank::of(k);
  return Rank::infinite();
}

ExpRankValue exp_rank(const RuntimeTrace& trace, const Range& range) {
  // k ascending; the last passing k wins.
  std::vector<Rational> grid;
  for (int j = 64; j >= 2; --j) grid.emplace_back(1, j);
  for (std::uint64_t k = 1; k <= range.n0; ++k) grid.emplace_back(BigInt(k));
  ExpRankValue out;
  for (const auto& k : grid) {
    if (oc_bound(trace, GrowthFormula::exp(1 / k), range).holds) {
      out.finite = true;
      out.value = 1 / k;
    }
  }
  return out;
}

ClassLabel classify(const RuntimeTrace& trace, const Range& range) {
  if (range.n1 < 4) throw Error(ErrorCode::input, "classify needs n1 >= 4");
  const double l2 = std::log2(static_cast<double>(range.n0));
  const double ll = std::log2(l2);

  ClassLabel label;
  const Rank lr = log_rank(trace, range);
  label.log_rank = lr;

  const auto one = GrowthFormula::constant(1);
  const Range lower(range.n1, range.midpoint());
  if (min_const(trace, one, range) == min_const(trace, one, lower) && lr.finite && lr.k <= 1) {
    label.level = Level::Const;
    return label;
  }
  if (lr.finite && static_cast<double>(lr.k) <= l2 / ll) {
    label.level = Level::PolyLog;
    return label;
  }
  if (oc_bound(trace, GrowthFormula::poly(1), range).holds) {
    label.level = Level::Linear;
    return label;
  }
  const Rank pr = poly_rank(trace, range);
  label.poly_rank = pr;
  if (pr.finite && static_cast<double>(pr.k) <= 1 + ll) {
    label.level = Level::Poly;
    return label;
  }
  if (pr.finite && static_cast<double>(pr.k) <= 1 + l2) {
    label.level = Level::SemiPoly;
    return label;
  }
  const ExpRankValue er = exp_rank(trace, range);
  label.exp_rank = er;
  label.level = (er.finite && er.value <= 8) ? Level::Exp : Level::Intr;
  return label;
}

}  // namespace finitekit::complexity
