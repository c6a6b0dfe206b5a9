#pragma once

#include <cstdint>
#include <optional>

#include "finitekit/complexity/growth.hpp"
#include "finitekit/complexity/trace.hpp"

namespace finitekit::complexity {

struct BoundWitness {
  bool holds = false;
  std::optional<std::uint64_t> failing_n;
  BigInt const_full;  // minimal constant on [n1..n0]
  BigInt const_half;  // minimal constant on [n1..midpoint]
};

/// cost(n) <= c * g(n) at every covered n in range.
BoundWitness bound_holds(const RuntimeTrace& trace, const GrowthFormula& g, const BigInt& c,
                         const Range& range);

/// Smallest natural c with cost(n) <= c * g(n) over the range.
BigInt min_const(const RuntimeTrace& trace, const GrowthFormula& g, const Range& range);

/// min_const on [n1..n0] <= h * min_const on [n1..midpoint].
BoundWitness apparent_bound(const RuntimeTrace& trace, const GrowthFormula& g,
                            const Rational& h_at_n0, const Range& range);

/// apparent_bound with h = 1 + 1/n0^2.
BoundWitness oc_bound(const RuntimeTrace& trace, const GrowthFormula& g, const Range& range);

/// Product of (1 + 1/n^2) for n = 1..upto.
double oc_factor_product(std::uint64_t upto);

}  // namespace finitekit::complexity
