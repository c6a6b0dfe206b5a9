#include "finitekit/complexity/bounds.hpp"

#include "finitekit/util/error.hpp"

namespace finitekit::complexity {

namespace {

struct Constants {
  BigInt full;
  BigInt half;
};

BigInt point_const(const TracePoint& p, const GrowthFormula& g) {
  const Rational gv = g(p.n);
  return ceil_div(p.cost * denominator(gv), numerator(gv));
}

Constants both_constants(const RuntimeTrace& trace, const GrowthFormula& g, const Range& range) {
  const auto mid = range.midpoint();
  auto pts = trace.covered(range.n1, range.n0);
  // Sampled traces still need a point in the lower half for the midpoint test.
  trace.covered(range.n1, mid);
  Constants c{0, 0};
  for (const auto& p : pts) {
    BigInt q = point_const(p, g);
    if (p.n <= mid && q > c.half) c.half = q;
    if (q > c.full) c.full = std::move(q);
  }
  return c;
}

}  // namespace

BoundWitness bound_holds(const RuntimeTrace& trace, const GrowthFormula& g, const BigInt& c,
                         const Range& range) {
  BoundWitness w;
  const auto mid = range.midpoint();
  w.holds = true;
  for (const auto& p : trace.covered(range.n1, range.n0)) {
    BigInt q = point_const(p, g);
    if (p.n <= mid && q > w.const_half) w.const_half = q;
    if (q > c && w.holds) {
      w.holds = false;
      w.failing_n = p.n;
    }
    if (q > w.const_full) w.const_full = std::move(q);
  }
  return w;
}

BigInt min_const(const RuntimeTrace& trace, const GrowthFormula& g, const Range& range) {
  BigInt best = 0;
  for (const auto& p : trace.covered(range.n1, range.n0)) {
    BigInt q = point_const(p, g);
    if (q > best) best = std::move(q);
  }
  return best;
}

BoundWitness apparent_bound(const RuntimeTrace& trace, const GrowthFormula& g,
                            const Rational& h_at_n0, const Range& range) {
  Constants c = both_constants(trace, g, range);
  BoundWitness w;
  w.holds = Rational(c.full) <= h_at_n0 * c.half;
  if (!w.holds) w.failing_n = range.n0;
  w.const_full = std::move(c.full);
  w.const_half = std::move(c.half);
  return w;
}

BoundWitness oc_bound(const RuntimeTrace& trace, const GrowthFormula& g, const Range& range) {
  const BigInt n0 = range.n0;
  return apparent_bound(trace, g, Rational(1) + Rational(BigInt(1), n0 * n0), range);
}

double oc_factor_product(std::uint64_t upto) {
  double product = 1.0;
  for (std::uint64_t n = 1; n <= upto; ++n) {
    const double x = static_cast<double>(n);
    product *= 1.0 + 1.0 / (x * x);
  }
  return product;
}

}  // namespace finitekit::complexity
