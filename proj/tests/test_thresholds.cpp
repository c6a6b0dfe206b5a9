#include <gtest/gtest.h>

#include "finitekit/thresholds/thresholds.hpp"
#include "finitekit/util/error.hpp"

using namespace finitekit;
using namespace finitekit::thresholds;
using complexity::GrowthFormula;
using complexity::Range;

namespace {

BigInt pow_big(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

RuntimeTrace dense(std::uint64_t a, std::uint64_t b, std::function<BigInt(std::uint64_t)> f) {
  return RuntimeTrace::tabulate(a, b, f);
}

BigInt bitonic(std::uint64_t n) { return BigInt(n < 40 ? n : n + 5000); }

BigInt piecewise(std::uint64_t n) { return n < 32 ? BigInt(n) : 32 * pow_big(2, n - 31); }

// Prefix scan written straight from the definitions, one classify per prefix.
std::optional<std::uint64_t> brute_explode(const RuntimeTrace& t, Level level, std::uint64_t n1) {
  for (const auto& p : t.points())
    if (p.n >= n1 && complexity::classify(t, Range(n1, p.n)).level > level) return p.n;
  return std::nullopt;
}

std::optional<std::uint64_t> brute_collapse(const RuntimeTrace& t, Level level, std::uint64_t n1) {
  std::uint64_t base = 0;
  for (const auto& p : t.points())
    if (p.n >= 4) {
      base = p.n;
      break;
    }
  std::optional<std::uint64_t> z;
  for (auto it = t.points().rbegin(); it != t.points().rend(); ++it) {
    if (it->n > n1 || it->n < base) continue;
    if (complexity::classify(t, Range(base, it->n)).level > level) break;
    z = it->n;
  }
  return z;
}

}  // namespace

TEST(Explode, PiecewiseJumpsInWindow) {
  auto t = dense(2, 60, piecewise);
  auto r = explode(t, Level::Linear, 4);
  ASSERT_TRUE(r.found);
  EXPECT_GE(*r.z, 32u);
  EXPECT_LE(*r.z, 40u);
  EXPECT_EQ(*r.z, 32u);
  EXPECT_EQ(r.scanned_up_to, *r.z);
}

TEST(Explode, SquareNeverLeavesPoly) {
  auto t = dense(2, 300, [](auto n) { return BigInt(n * n); });
  for (Level l : {Level::Poly, Level::SemiPoly, Level::Exp}) {
    auto r = explode(t, l, 4);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.scanned_up_to, 300u);
  }
}

TEST(Explode, OracleValues) {
  auto bt = dense(2, 200, bitonic);
  auto lin = explode(bt, Level::Linear, 4);
  ASSERT_TRUE(lin.found);
  EXPECT_EQ(*lin.z, 40u);
  auto pl = explode(bt, Level::PolyLog, 4);
  ASSERT_TRUE(pl.found);
  EXPECT_EQ(*pl.z, 5u);
  EXPECT_FALSE(explode(dense(2, 200, [](auto n) { return BigInt(n); }), Level::Linear, 4).found);
}

TEST(Explode, WorkersDoNotChangeResult) {
  auto bt = dense(2, 200, bitonic);
  for (unsigned w : {1u, 2u, 5u, 16u}) EXPECT_EQ(*explode(bt, Level::Linear, 4, w).z, 40u);
}

TEST(Explode, NeedsCoveredStart) {
  auto t = dense(10, 40, [](auto n) { return BigInt(n); });
  try {
    explode(t, Level::Linear, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::coverage);
  }
}

TEST(Collapse, OracleValues) {
  auto bt = dense(2, 200, bitonic);
  auto r = collapse(bt, Level::Linear, 200);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(*r.z, 76u);
  EXPECT_LE(*r.z, 200u);

  auto sq = collapse(dense(2, 200, [](auto n) { return BigInt(n * n); }), Level::Poly, 200);
  ASSERT_TRUE(sq.found);
  EXPECT_EQ(*sq.z, 4u);
}

TEST(Collapse, LinearIdentityCollapsesToBase) {
  auto t = dense(2, 200, [](auto n) { return BigInt(n); });
  for (std::uint64_t n1 : {10u, 77u, 200u}) {
    auto r = collapse(t, Level::Linear, n1);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(*r.z, 4u);
  }
}

TEST(Collapse, ExponentialNeverLinear) {
  auto r = collapse(dense(2, 24, [](auto n) { return pow_big(2, n); }), Level::Linear, 24);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.scanned_up_to, 24u);
}

TEST(Thresholds, AgreeWithBruteForce) {
  const std::vector<RuntimeTrace> traces{
      dense(2, 200, bitonic),
      dense(2, 60, piecewise),
      dense(2, 150, [](auto n) { return BigInt(n < 50 ? 3 : n * n); }),
      RuntimeTrace::tabulate(std::vector<std::uint64_t>{4, 8, 16, 32, 64, 128, 256, 512, 1024},
                             [](auto n) { return BigInt(n * n * n); }),
  };
  for (const auto& t : traces) {
    for (int li = 1; li <= 6; ++li) {
      const auto level = static_cast<Level>(li);
      const auto e = explode(t, level, 4, 3);
      EXPECT_EQ(e.z, brute_explode(t, level, 4)) << li;
      const auto c = collapse(t, level, t.last_n(), 3);
      EXPECT_EQ(c.z, brute_collapse(t, level, t.last_n())) << li;
    }
  }
}

TEST(Thresholds, SampledGridReported) {
  auto t = RuntimeTrace::tabulate(std::vector<std::uint64_t>{4, 8, 16, 32},
                                  [](auto n) { return BigInt(n); });
  EXPECT_EQ(explode(t, Level::Linear, 4).grid, complexity::Grid::sampled);
  EXPECT_EQ(collapse(dense(4, 10, [](auto n) { return BigInt(n); }), Level::Linear, 10).grid,
            complexity::Grid::dense);
}

TEST(Doubling, SquareIsStable) {
  auto dense_sq = dense(2, 512, [](auto n) { return BigInt(n * n); });
  auto ev = doubling_evidence(dense_sq, GrowthFormula::poly(2), 8);
  EXPECT_TRUE(ev.stable);
  EXPECT_FALSE(ev.first_failure);
  EXPECT_EQ(ev.pairs.size(), 256u - 8u + 1u);
  EXPECT_EQ(ev.note, kDoublingNote);

  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = 2; n <= 512; n *= 2) grid.push_back(n);
  auto sampled = RuntimeTrace::tabulate(grid, [](auto n) { return BigInt(n * n); });
  auto ev2 = doubling_evidence(sampled, GrowthFormula::poly(2), 8);
  EXPECT_TRUE(ev2.stable);
  EXPECT_EQ(ev2.pairs.size(), 6u);  // 8, 16, ..., 256
}

TEST(Doubling, BlockTraceFails) {
  // n below 16, n^2 on [16..31], then flat-ish growth.
  auto t = dense(4, 128, [](auto n) { return BigInt(n < 16 ? n : (n < 32 ? n * n : 1024 + n)); });
  auto ev = doubling_evidence(t, GrowthFormula::poly(1), 4);
  EXPECT_FALSE(ev.stable);
  ASSERT_TRUE(ev.first_failure);
  EXPECT_EQ(*ev.first_failure, 8u);
  bool any_failed = false;
  for (const auto& p : ev.pairs) any_failed = any_failed || !p.passed();
  EXPECT_TRUE(any_failed);
}

TEST(Doubling, ConstantIsStable) {
  auto ev = doubling_evidence(dense(2, 64, [](auto) { return BigInt(7); }),
                              GrowthFormula::constant(7), 2);
  EXPECT_TRUE(ev.stable);
}

TEST(Doubling, SelfConsistentOnExactFormulas) {
  const std::vector<GrowthFormula> family{
      GrowthFormula::constant(3), GrowthFormula::poly(1), GrowthFormula::poly(3),
      GrowthFormula::log_pow(2), GrowthFormula::exp(1), GrowthFormula::exp(Rational(1, 2))};
  for (const auto& g : family) {
    auto t = dense(4, 64, [&g](auto n) {
      const Rational v = g(n);
      return ceil_div(numerator(v), denominator(v));
    });
    EXPECT_TRUE(doubling_evidence(t, g, 4).stable) << g.to_string();
  }
}

TEST(ComposeRanks, Examples) {
  auto p = compose_ranks(RankExpr::poly(2), RankExpr::poly(3));
  EXPECT_EQ(p.rank, RankExpr::poly(5));
  EXPECT_TRUE(p.upper_bound);
  EXPECT_EQ(compose_ranks(RankExpr::log(0), RankExpr::log(4)).rank, RankExpr::log(4));
  EXPECT_EQ(compose_ranks(RankExpr::exp(Rational(1, 4)), RankExpr::exp(Rational(1, 4))).rank,
            RankExpr::exp(Rational(1, 2)));
}

TEST(ComposeRanks, Table) {
  struct Row {
    RankExpr a, b, want;
  };
  const std::vector<Row> rows{
      {RankExpr::poly(0), RankExpr::poly(0), RankExpr::poly(0)},
      {RankExpr::poly(0), RankExpr::poly(7), RankExpr::poly(7)},
      {RankExpr::poly(1), RankExpr::poly(1), RankExpr::poly(2)},
      {RankExpr::poly(1), RankExpr::poly(2), RankExpr::poly(3)},
      {RankExpr::poly(3), RankExpr::poly(1), RankExpr::poly(4)},
      {RankExpr::poly(4), RankExpr::poly(4), RankExpr::poly(8)},
      {RankExpr::poly(10), RankExpr::poly(54), RankExpr::poly(64)},
      {RankExpr::log(0), RankExpr::log(0), RankExpr::log(0)},
      {RankExpr::log(1), RankExpr::log(1), RankExpr::log(2)},
      {RankExpr::log(2), RankExpr::log(3), RankExpr::log(5)},
      {RankExpr::log(6), RankExpr::log(1), RankExpr::log(7)},
      {RankExpr::log(0), RankExpr::log(9), RankExpr::log(9)},
      {RankExpr::log(12), RankExpr::log(12), RankExpr::log(24)},
      {RankExpr::exp(1), RankExpr::exp(1), RankExpr::exp(2)},
      {RankExpr::exp(Rational(1, 2)), RankExpr::exp(Rational(1, 3)), RankExpr::exp(Rational(5, 6))},
      {RankExpr::exp(Rational(1, 8)), RankExpr::exp(Rational(1, 8)), RankExpr::exp(Rational(1, 4))},
      {RankExpr::exp(Rational(1, 4)), RankExpr::exp(1), RankExpr::exp(Rational(5, 4))},
      {RankExpr::exp(2), RankExpr::exp(Rational(1, 2)), RankExpr::exp(Rational(5, 2))},
      {RankExpr::exp(Rational(1, 7)), RankExpr::exp(Rational(1, 5)), RankExpr::exp(Rational(12, 35))},
      {RankExpr::exp(8), RankExpr::exp(1), RankExpr::exp(9)},
  };
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& r : rows) {
    const auto got = compose_ranks(r.a, r.b);
    EXPECT_EQ(got.rank, r.want) << r.a.to_string() << " o " << r.b.to_string();
    EXPECT_TRUE(got.upper_bound);
  }
}

TEST(ComposeRanks, Monotone) {
  for (unsigned a = 0; a < 6; ++a)
    for (unsigned b = 0; b < 6; ++b) {
      const auto base = compose_ranks(RankExpr::poly(a), RankExpr::poly(b)).rank.value;
      EXPECT_LE(base, compose_ranks(RankExpr::poly(a + 1), RankExpr::poly(b)).rank.value);
      EXPECT_LE(base, compose_ranks(RankExpr::poly(a), RankExpr::poly(b + 1)).rank.value);
      const Rational ea(1, a + 1), eb(1, b + 1);
      const auto e = compose_ranks(RankExpr::exp(ea), RankExpr::exp(eb)).rank.value;
      EXPECT_LE(e, compose_ranks(RankExpr::exp(ea * 2), RankExpr::exp(eb)).rank.value);
    }
}

TEST(ComposeRanks, MixedKindsUnsupported) {
  try {
    compose_ranks(RankExpr::poly(1), RankExpr::log(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}
