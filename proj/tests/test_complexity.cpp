#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "finitekit/complexity/bounds.hpp"
#include "finitekit/complexity/classify.hpp"
#include "finitekit/util/error.hpp"

using namespace finitekit;
using namespace finitekit::complexity;

namespace {

BigInt pow_big(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::uint64_t clog2(std::uint64_t n) {
  std::uint64_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

RuntimeTrace dense(std::uint64_t a, std::uint64_t b, std::function<BigInt(std::uint64_t)> f) {
  return RuntimeTrace::tabulate(a, b, f);
}

RuntimeTrace pow2(std::uint64_t a, std::uint64_t b, std::function<BigInt(std::uint64_t)> f) {
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t n = a; n <= b; n *= 2) sizes.push_back(n);
  return RuntimeTrace::tabulate(sizes, f);
}

// Operation count of the Floyd-Warshall triple loop: one compare and at most
// one update per innermost iteration, plus loop bookkeeping.
BigInt floyd_ops(std::uint64_t n) {
  std::uint64_t ops = 0;
  for (std::uint64_t k = 0; k < n; ++k)
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) ops += 3;
  return ops;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::input;
}

}  // namespace

TEST(Trace, RejectsDecreasingCost) {
  std::vector<TracePoint> pts{{2, 5}, {3, 4}};
  try {
    RuntimeTrace t(pts, Grid::dense);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::monotonicity);
    EXPECT_NE(std::string(e.what()).find("n=3"), std::string::npos);
  }
}

TEST(Trace, RejectsZeroCostAndUnsortedN) {
  EXPECT_EQ(code_of([] { RuntimeTrace({{2, 0}}, Grid::dense); }), ErrorCode::input);
  EXPECT_EQ(code_of([] { RuntimeTrace({{3, 1}, {3, 2}}, Grid::sampled); }), ErrorCode::input);
}

TEST(Trace, CsvRoundTrip) {
  auto t = pow2(4, 64, [](auto n) { return BigInt(n * n); });
  std::stringstream ss;
  t.write_csv(ss);
  auto back = RuntimeTrace::read_csv(ss);
  ASSERT_EQ(back.points().size(), t.points().size());
  for (std::size_t i = 0; i < t.points().size(); ++i) {
    EXPECT_EQ(back.points()[i].n, t.points()[i].n);
    EXPECT_EQ(back.points()[i].cost, t.points()[i].cost);
  }
  EXPECT_EQ(back.grid(), Grid::sampled);
}

TEST(Trace, CsvErrorsNameTheLine) {
  std::istringstream bad_header("x,y\n2,3\n");
  try {
    RuntimeTrace::read_csv(bad_header);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::input);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  std::istringstream bad_row("n,cost\n2,3\n4\n");
  try {
    RuntimeTrace::read_csv(bad_row);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Trace, DenseGapIsCoverageError) {
  auto t = dense(2, 10, [](auto n) { return BigInt(n); });
  EXPECT_EQ(code_of([&] { bound_holds(t, GrowthFormula::poly(1), 1, Range(2, 20)); }),
            ErrorCode::coverage);
}

TEST(Range, Validation) {
  EXPECT_EQ(code_of([] { Range(1, 5); }), ErrorCode::input);
  EXPECT_EQ(code_of([] { Range(6, 5); }), ErrorCode::input);
  EXPECT_EQ(Range(2, 100).midpoint(), 51u);
  EXPECT_EQ(Range::parse("4..256").n0, 256u);
}

TEST(Growth, InvalidParametersUnsupported) {
  EXPECT_EQ(code_of([] { GrowthFormula::log_pow(0); }), ErrorCode::unsupported);
  EXPECT_EQ(code_of([] { GrowthFormula::exp(0); }), ErrorCode::unsupported);
  EXPECT_EQ(code_of([] { GrowthFormula::constant(0); }), ErrorCode::unsupported);
}

TEST(BoundHolds, Examples) {
  auto sq = dense(2, 10, [](auto n) { return BigInt(n * n); });
  EXPECT_TRUE(bound_holds(sq, GrowthFormula::poly(2), 1, Range(2, 10)).holds);

  auto twice = dense(2, 5, [](auto n) { return BigInt(2 * n); });
  auto w = bound_holds(twice, GrowthFormula::poly(1), 1, Range(2, 5));
  EXPECT_FALSE(w.holds);
  ASSERT_TRUE(w.failing_n);
  EXPECT_EQ(*w.failing_n, 2u);

  auto fw = dense(4, 64, floyd_ops);
  EXPECT_TRUE(bound_holds(fw, GrowthFormula::poly(3), 100, Range(4, 64)).holds);
}

TEST(MinConst, Examples) {
  auto f3 = dense(2, 10, [](auto n) { return BigInt(3 * n); });
  EXPECT_EQ(min_const(f3, GrowthFormula::poly(1), Range(2, 10)), 3);

  auto sq1 = dense(2, 10, [](auto n) { return BigInt(n * n + 1); });
  EXPECT_EQ(min_const(sq1, GrowthFormula::poly(2), Range(2, 10)), 2);

  auto fact = dense(2, 4, [](auto n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
  });
  EXPECT_EQ(min_const(fact, GrowthFormula::exp(1), Range(2, 4)), 2);
}

TEST(MinConst, OracleValues) {
  auto sq = dense(2, 16, [](auto n) { return BigInt(n * n); });
  EXPECT_EQ(min_const(sq, GrowthFormula::poly(1), Range(2, 16)), 16);
  auto lin = dense(2, 100, [](auto n) { return BigInt(3 * n + 5); });
  EXPECT_EQ(min_const(lin, GrowthFormula::poly(1), Range(2, 100)), 6);
}

TEST(MinConst, IsExactMinimum) {
  const std::vector<std::pair<RuntimeTrace, GrowthFormula>> cases{
      {dense(2, 50, [](auto n) { return BigInt(n * n + 7); }), GrowthFormula::poly(1)},
      {dense(2, 50, [](auto n) { return BigInt(3 * n + 5); }), GrowthFormula::poly(1)},
      {dense(4, 60, [](auto n) { return BigInt(clog2(n) * clog2(n)); }), GrowthFormula::log_pow(1)},
      {dense(2, 20, [](auto n) { return pow_big(3, n); }), GrowthFormula::exp(1)},
      {dense(2, 30, [](auto n) { return BigInt(n); }), GrowthFormula::constant(3)},
  };
  for (const auto& [t, g] : cases) {
    const Range r(t.first_n(), t.last_n());
    const BigInt c = min_const(t, g, r);
    EXPECT_TRUE(bound_holds(t, g, c, r).holds) << g.to_string();
    if (c > 0) {
      auto below = bound_holds(t, g, c - 1, r);
      EXPECT_FALSE(below.holds) << g.to_string();
      ASSERT_TRUE(below.failing_n);
      EXPECT_GE(*below.failing_n, r.n1);
      EXPECT_LE(*below.failing_n, r.n0);
    }
  }
}

TEST(ApparentBound, Examples) {
  auto id = dense(2, 100, [](auto n) { return BigInt(n); });
  auto w = apparent_bound(id, GrowthFormula::constant(1), 2, Range(2, 100));
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.const_full, 100);
  EXPECT_EQ(w.const_half, 51);

  auto sq = dense(2, 100, [](auto n) { return BigInt(n * n); });
  EXPECT_FALSE(
      apparent_bound(sq, GrowthFormula::poly(1), Rational(10001, 10000), Range(2, 100)).holds);

  auto seven = dense(2, 40, [](auto) { return BigInt(7); });
  EXPECT_TRUE(apparent_bound(seven, GrowthFormula::constant(7), 1, Range(2, 40)).holds);
  EXPECT_TRUE(apparent_bound(seven, GrowthFormula::constant(7), 1, Range(9, 33)).holds);
}

TEST(OcBound, Examples) {
  auto five = dense(2, 1000, [](auto n) { return BigInt(5 * n); });
  EXPECT_TRUE(oc_bound(five, GrowthFormula::poly(1), Range(2, 1000)).holds);

  auto sq = dense(2, 100, [](auto n) { return BigInt(n * n); });
  EXPECT_FALSE(oc_bound(sq, GrowthFormula::poly(1), Range(2, 100)).holds);

  auto lg = dense(4, 256, [](auto n) { return BigInt(clog2(n)); });
  EXPECT_TRUE(oc_bound(lg, GrowthFormula::log_pow(1), Range(4, 256)).holds);
}

TEST(OcBound, OracleValues) {
  auto sq = dense(2, 64, [](auto n) { return BigInt(n * n); });
  EXPECT_TRUE(oc_bound(sq, GrowthFormula::poly(2), Range(2, 64)).holds);
  EXPECT_FALSE(oc_bound(sq, GrowthFormula::poly(1), Range(2, 64)).holds);
}

TEST(OcBound, ImpliesApparentWithLargerFactor) {
  const std::vector<RuntimeTrace> traces{
      dense(2, 80, [](auto n) { return BigInt(5 * n); }),
      dense(2, 80, [](auto n) { return BigInt(n * n); }),
      dense(2, 80, [](auto n) { return BigInt(n < 30 ? n : n + 40); }),
  };
  for (const auto& t : traces) {
    for (unsigned k = 0; k <= 3; ++k) {
      const auto g = GrowthFormula::poly(k);
      const Range r(2, 80);
      if (!oc_bound(t, g, r).holds) continue;
      for (const Rational& h : {Rational(1) + Rational(1, 6400), Rational(2), Rational(3, 2)})
        EXPECT_TRUE(apparent_bound(t, g, h, r).holds);
    }
  }
}

TEST(OcFactor, RunningProduct) {
  const double p = oc_factor_product(1000000);
  EXPECT_NEAR(p, 3.676, 0.01);
  EXPECT_NEAR(p, 3.676074234300874, 1e-9);
}

TEST(PolyRank, Examples) {
  auto cube = dense(2, 256, [](auto n) { return BigInt(n * n * n); });
  EXPECT_EQ(poly_rank(cube, Range(2, 256)).k, 3u);
  auto seven = dense(2, 256, [](auto) { return BigInt(7); });
  EXPECT_EQ(poly_rank(seven, Range(2, 256)).k, 1u);
  // On a power-of-two grid the k=1 check compares 2048 against 2 * 896.
  auto nlog = pow2(2, 256, [](auto n) { return BigInt(n * clog2(n)); });
  auto w = apparent_bound(nlog, GrowthFormula::poly(0), 2, Range(2, 256));
  EXPECT_EQ(w.const_full, 2048);
  EXPECT_EQ(w.const_half, 896);
  EXPECT_EQ(poly_rank(nlog, Range(2, 256)).k, 2u);
}

TEST(PolyRank, ExactPowers) {
  for (unsigned j = 1; j <= 5; ++j) {
    auto t = dense(2, 1024, [j](auto n) { return pow_big(n, j); });
    auto r = poly_rank(t, Range(2, 1024));
    ASSERT_TRUE(r.finite);
    EXPECT_EQ(r.k, j);
  }
}

TEST(PolyRank, OverflowIsInfinite) {
  auto t = dense(2, 64, [](auto n) { return pow_big(n, 120); });
  EXPECT_FALSE(poly_rank(t, Range(2, 64)).finite);
}

TEST(LogRank, Examples) {
  auto one = dense(4, 256, [](auto) { return BigInt(1); });
  EXPECT_EQ(log_rank(one, Range(4, 256)).k, 1u);

  auto lsq = pow2(4, 4096, [](auto n) { return BigInt(clog2(n) * clog2(n)); });
  auto r = log_rank(lsq, Range(4, 4096));
  ASSERT_TRUE(r.finite);
  EXPECT_EQ(r.k, 2u);

  // Natural minimal constants bottom out at 1 once log^k outgrows n, so the
  // identity gets a finite rank: at k=4 both constants are 1.
  auto id = pow2(4, 4096, [](auto n) { return BigInt(n); });
  auto ri = log_rank(id, Range(4, 4096));
  ASSERT_TRUE(ri.finite);
  EXPECT_EQ(ri.k, 4u);
  auto w3 = oc_bound(id, GrowthFormula::log_pow(3), Range(4, 4096));
  EXPECT_EQ(w3.const_full, 3);
  EXPECT_EQ(w3.const_half, 2);
}

TEST(PolyRank, DenseNLogN) {
  auto nlog = dense(2, 256, [](auto n) { return BigInt(n * clog2(n)); });
  EXPECT_EQ(poly_rank(nlog, Range(2, 256)).k, 1u);
}

TEST(LogRank, DenseGridOracleValues) {
  // A dense grid puts the midpoint at 2050, where ceil(log2)^2 is already 144.
  auto lsq = dense(4, 4096, [](auto n) { return BigInt(clog2(n) * clog2(n)); });
  EXPECT_EQ(log_rank(lsq, Range(4, 4096)).k, 1u);
  auto id = dense(4, 4096, [](auto n) { return BigInt(n); });
  auto r = log_rank(id, Range(4, 4096));
  ASSERT_TRUE(r.finite);
  EXPECT_EQ(r.k, 4u);
}

TEST(LogRank, NeedsN1AtLeastFour) {
  auto one = dense(2, 16, [](auto) { return BigInt(1); });
  EXPECT_EQ(code_of([&] { log_rank(one, Range(2, 16)); }), ErrorCode::input);
}

TEST(ExpRank, Examples) {
  auto e1 = dense(2, 30, [](auto n) { return pow_big(2, n); });
  auto r1 = exp_rank(e1, Range(2, 30));
  ASSERT_TRUE(r1.finite);
  EXPECT_EQ(r1.value, 1);

  auto e2 = dense(2, 24, [](auto n) { return pow_big(4, n); });
  auto r2 = exp_rank(e2, Range(2, 24));
  ASSERT_TRUE(r2.finite);
  EXPECT_EQ(r2.value, 2);

  auto e9 = dense(2, 16, [](auto n) { return pow_big(2, 9 * n); });
  auto r9 = exp_rank(e9, Range(2, 16));
  ASSERT_TRUE(r9.finite);
  EXPECT_EQ(r9.value, 9);
}

TEST(ExpRank, HalfRate) {
  auto t = dense(2, 40, [](auto n) { return pow_big(2, n / 2); });
  auto r = exp_rank(t, Range(2, 40));
  ASSERT_TRUE(r.finite);
  EXPECT_EQ(r.value, Rational(1, 2));
}

TEST(Classify, Examples) {
  auto sq = dense(4, 256, [](auto n) { return BigInt(n * n); });
  auto l = classify(sq, Range(4, 256));
  EXPECT_EQ(l.level, Level::Poly);
  ASSERT_TRUE(l.poly_rank);
  EXPECT_EQ(l.poly_rank->k, 2u);
  EXPECT_EQ(l.to_string(), "Poly, PolyRank=2");

  auto seven = dense(4, 256, [](auto) { return BigInt(7); });
  EXPECT_EQ(classify(seven, Range(4, 256)).level, Level::Const);

  auto e9 = dense(4, 16, [](auto n) { return pow_big(2, 9 * n); });
  auto li = classify(e9, Range(4, 16));
  EXPECT_EQ(li.level, Level::Intr);
  ASSERT_TRUE(li.exp_rank);
  EXPECT_EQ(li.exp_rank->value, 9);
}

namespace {

const std::vector<std::function<BigInt(std::uint64_t)>>& battery() {
  static const std::vector<std::function<BigInt(std::uint64_t)>> fs{
      [](auto) { return BigInt(7); },
      [](auto n) { return BigInt(clog2(n) * clog2(n)); },
      [](auto n) { return BigInt(n); },
      [](auto n) { return BigInt(n * clog2(n)); },
      [](auto n) { return BigInt(n * n); },
      [](auto n) { return pow_big(n, 5); },
      [](auto n) { return pow_big(2, n); },
      [](auto n) { return pow_big(2, 9 * n); },
  };
  return fs;
}

}  // namespace

TEST(Classify, BatteryOnPowerOfTwoGrid) {
  const std::vector<Level> want{Level::Const, Level::PolyLog, Level::Linear,   Level::Poly,
                                Level::Poly,  Level::SemiPoly, Level::Exp,     Level::Intr};
  for (std::size_t i = 0; i < battery().size(); ++i)
    EXPECT_EQ(classify(pow2(4, 1024, battery()[i]), Range(4, 1024)).level, want[i]) << i;
}

TEST(Classify, BatteryOnDenseGrid) {
  const std::vector<Level> want{Level::Const, Level::Const, Level::Linear,   Level::Linear,
                                Level::Poly,  Level::SemiPoly, Level::Exp,     Level::Intr};
  for (std::size_t i = 0; i < battery().size(); ++i)
    EXPECT_EQ(classify(dense(4, 1024, battery()[i]), Range(4, 1024)).level, want[i]) << i;
}

TEST(Classify, AntitoneInDomination) {
  const auto& fs = battery();
  std::vector<RuntimeTrace> traces;
  std::vector<Level> levels;
  for (const auto& f : fs) {
    traces.push_back(pow2(4, 1024, f));
    levels.push_back(classify(traces.back(), Range(4, 1024)).level);
  }
  int compared = 0;
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = 0; b < fs.size(); ++b) {
      bool dominated = true;
      for (std::size_t i = 0; i < traces[a].points().size(); ++i)
        dominated = dominated && traces[a].points()[i].cost <= traces[b].points()[i].cost;
      if (!dominated) continue;
      ++compared;
      EXPECT_LE(levels[a], levels[b]) << a << " vs " << b;
    }
  EXPECT_GT(compared, 20);
}

TEST(Classify, ExactlyOneLevelNamed) {
  for (int i = 1; i <= 7; ++i) {
    const auto lv = static_cast<Level>(i);
    EXPECT_EQ(parse_level(level_name(lv)), lv);
  }
  EXPECT_EQ(code_of([] { parse_level("Huge"); }), ErrorCode::input);
}
