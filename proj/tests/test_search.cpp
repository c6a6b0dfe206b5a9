#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <random>
#include <set>

#include "finitekit/search/approach.hpp"
#include "finitekit/search/checkpoint.hpp"
#include "finitekit/search/lookup.hpp"
#include "finitekit/search/optimal.hpp"
#include "finitekit/search/packs.hpp"
#include "finitekit/util/error.hpp"
#include "oracles/brute_optimal.hpp"

using namespace finitekit;
using namespace finitekit::search;

namespace {

std::vector<oracle::Case> cases_of(const ProblemStatement& p, std::uint64_t n) {
  std::vector<oracle::Case> out;
  for (const auto& in : p.universe(n)) {
    const auto want = first_accepted_output(p, in);
    out.push_back({{in.begin(), in.end()}, {want->begin(), want->end()}});
  }
  return out;
}

unsigned ceil_log2(std::uint64_t u) {
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < u) ++k;
  return k;
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

const vm::Bytecode kFirstBit = vm::parse_text("READ_INPUT 0\nOUTPUT\nHALT\n");

vm::Bytecode padded_first_bit(int pairs) {
  vm::Bytecode code;
  for (int i = 0; i < pairs; ++i) {
    code.push_back({vm::Op::PUSH0, 0});
    code.push_back({vm::Op::POP, 0});
  }
  code.insert(code.end(), kFirstBit.begin(), kFirstBit.end());
  return code;
}

}  // namespace

TEST(Lookup, ParityThreeBits) {
  const auto p = parity_problem(3);
  const auto built = build_lookup_hint(p, 3);
  EXPECT_EQ(built.entries, 15u);
  auto solver = built.solver.instantiate();
  solver->initialize(built.solver.hint);
  std::uint64_t max_probes = 0;
  for (const auto& in : p.universe(3)) {
    const auto r = solver->query(in, 64);
    ASSERT_EQ(r.status, vm::Status::halted);
    std::uint8_t x = 0;
    for (auto b : in) x ^= b;
    EXPECT_EQ(*r.output, BitString{x});
    max_probes = std::max(max_probes, r.probes);
  }
  EXPECT_LE(max_probes, 4u);
}

TEST(Lookup, ConstantTrue) {
  const auto p = constant_true_problem(2);
  const auto built = build_lookup_hint(p, 2);
  EXPECT_EQ(built.entries, 7u);
  auto solver = built.solver.instantiate();
  solver->initialize(built.solver.hint);
  for (const auto& in : p.universe(2)) EXPECT_EQ(*solver->query(in, 64).output, BitString{1});
}

TEST(Lookup, SatSelectorAgreesWithBaseline) {
  const auto& mother = sat_pack_mother();
  for (std::uint64_t n0 : {3u, 6u, 8u}) {
    const auto p = sat_selector_problem(n0, mother);
    const auto built = build_lookup_hint(p, n0);
    EXPECT_EQ(built.entries, (std::uint64_t{2} << n0) - 1);
    auto solver = built.solver.instantiate();
    solver->initialize(built.solver.hint);
    for (const auto& in : p.universe(n0)) {
      const auto r = solver->query(in, 64);
      ASSERT_EQ(r.status, vm::Status::halted);
      const bool sat = problems::sat_decide_baseline(sat_selection(mother, in), 1u << 20).kind ==
                       problems::SatVerdict::Kind::sat;
      EXPECT_EQ(*r.output, BitString{static_cast<std::uint8_t>(sat)});
      EXPECT_LE(r.probes, n0 + 1);
    }
  }
}

TEST(Lookup, Errors) {
  EXPECT_EQ(code_of([] { build_lookup_hint(parity_problem(10), 10, 16); }), ErrorCode::budget);
  auto p = parity_problem(2);
  p.verifier = [](const BitString&, const BitString&) { return false; };
  EXPECT_EQ(code_of([&] { build_lookup_hint(p, 2); }), ErrorCode::inconsistent);
}

TEST(Reduce, Examples) {
  const auto a = reduce_to_decision([](std::uint64_t k) { return k > 9; }, 16);
  EXPECT_EQ(a.value, 9u);
  EXPECT_LE(a.probes, 4u);
  EXPECT_EQ(reduce_to_decision([](std::uint64_t) { return true; }, 1).value, 0u);
  const auto b = reduce_to_decision([](std::uint64_t k) { return k > 255; }, 256);
  EXPECT_EQ(b.value, 255u);
  EXPECT_EQ(b.probes, 8u);
}

TEST(Reduce, RandomTrials) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t u = 2 + rng() % 65535;
    const std::uint64_t target = rng() % u;
    unsigned calls = 0;
    const auto r = reduce_to_decision(
        [&](std::uint64_t k) {
          ++calls;
          return k > target;
        },
        u);
    EXPECT_EQ(r.value, target);
    EXPECT_EQ(r.probes, calls);
    EXPECT_LE(r.probes, ceil_log2(u));
  }
}

TEST(Reduce, CheckTopRejectsEmpty) {
  EXPECT_EQ(code_of([] { reduce_to_decision([](std::uint64_t) { return false; }, 8, true); }),
            ErrorCode::inconsistent);
}

TEST(Optimal, MatchesBruteForce) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.hint_max_bytes = 1;
  cfg.include_lookup = false;
  struct Row {
    ProblemStatement p;
    std::uint64_t n0;
  };
  const std::vector<Row> rows = {{first_bit_problem(2), 2}, {all_ones_problem(1), 1}, {all_ones_problem(2), 2}};
  for (const auto& row : rows) {
    const auto want = oracle::brute_optimal_fuel(cases_of(row.p, row.n0), static_cast<int>(row.n0), 3, 1, 64);
    const auto got = optimal_search(row.p, row.n0, cfg);
    EXPECT_TRUE(got.complete);
    ASSERT_EQ(got.best.has_value(), want.has_value()) << row.p.name << " n0=" << row.n0;
    if (want) {
      EXPECT_EQ(static_cast<long>(got.best->worst_fuel), *want) << row.p.name << " n0=" << row.n0;
    }
  }
}

TEST(Optimal, FirstBitWinner) {
  OptimalConfig cfg;
  cfg.include_lookup = false;
  const auto r = optimal_search(first_bit_problem(3), 3, cfg);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(r.best->worst_fuel, 3u);
  EXPECT_EQ(r.best->program.code, kFirstBit);
  cfg.fuel_cap = 1;
  EXPECT_FALSE(optimal_search(first_bit_problem(3), 3, cfg).best);
}

TEST(Optimal, ParityNeedsLookup) {
  OptimalConfig cfg;
  EXPECT_FALSE(optimal_search(parity_problem(3), 3, cfg).best);  // 16-byte table over the 2-byte cap
  cfg.hint_max_bytes = 16;
  const auto with = optimal_search(parity_problem(3), 3, cfg);
  ASSERT_TRUE(with.best);
  EXPECT_EQ(with.best->program.kind, HintedProgram::Kind::lookup);
  EXPECT_TRUE(with.lookup_tried);
  cfg.include_lookup = false;
  EXPECT_FALSE(optimal_search(parity_problem(3), 3, cfg).best);
}

TEST(Optimal, WorkersAgree) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.include_lookup = false;
  const auto p = all_ones_problem(2);
  const auto one = optimal_search(p, 2, cfg);
  cfg.workers = 4;
  const auto four = optimal_search(p, 2, cfg);
  EXPECT_EQ(one.trials, four.trials);
  ASSERT_EQ(one.best.has_value(), four.best.has_value());
  if (one.best) {
    EXPECT_EQ(one.best->program, four.best->program);
    EXPECT_EQ(one.best->worst_fuel, four.best->worst_fuel);
  }
}

TEST(Optimal, ResumeMatchesUninterrupted) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.include_lookup = false;
  const auto p = first_bit_problem(2);
  const auto full = optimal_search(p, 2, cfg);
  ASSERT_TRUE(full.complete);
  cfg.trial_budget = 700;
  auto part = optimal_search(p, 2, cfg);
  int slices = 1;
  while (!part.complete) {
    cfg.trial_budget += 700;  // the budget counts trials across slices
    part = optimal_search(p, 2, cfg, &part);
    ASSERT_LT(++slices, 10000);
  }
  EXPECT_GT(slices, 1);
  EXPECT_EQ(part.trials, full.trials);
  ASSERT_TRUE(part.best && full.best);
  EXPECT_EQ(part.best->program, full.best->program);
  EXPECT_EQ(part.best->worst_fuel, full.best->worst_fuel);
}

TEST(Optimal, RejectsLargeN0) {
  EXPECT_EQ(code_of([] { optimal_search(first_bit_problem(21), 21, OptimalConfig{}); }), ErrorCode::budget);
}

TEST(Doubling, ZeroWindowIsOneRound) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.include_lookup = false;
  const auto d = doubling_search(first_bit_problem, 4, 0, cfg);
  ASSERT_EQ(d.rounds.size(), 1u);
  const auto direct = optimal_search(first_bit_problem(4), 4, cfg);
  ASSERT_TRUE(d.rounds[0].search.best && direct.best);
  EXPECT_EQ(d.rounds[0].search.best->program, direct.best->program);
  EXPECT_EQ(d.note, kStabilityNote);
}

TEST(Doubling, AlternatingIsUnstable) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.include_lookup = false;
  const auto d = doubling_search(alternating_problem, 4, 2, cfg, 4);
  EXPECT_FALSE(d.stable);
  ASSERT_GE(d.rounds.size(), 2u);
  EXPECT_TRUE(d.rounds[0].search.best);
  EXPECT_FALSE(d.rounds[1].search.best);
}

TEST(Doubling, FirstBitIsStable) {
  OptimalConfig cfg;
  cfg.program_max_len = 3;
  cfg.include_lookup = false;
  const auto d = doubling_search(first_bit_problem, 4, 2, cfg);
  EXPECT_TRUE(d.stable);
  for (const auto& r : d.rounds) {
    ASSERT_TRUE(r.label);
    EXPECT_EQ(r.label->level, complexity::Level::Const);
  }
}

// Bytecode has no indirect addressing, so no short program checks every bit.
TEST(Doubling, AllOnesWithoutLookupHasNoWinner) {
  OptimalConfig cfg;
  cfg.include_lookup = false;
  EXPECT_FALSE(optimal_search(all_ones_problem(4), 4, cfg).best);
}

TEST(WinnerTrace, ConstantFuel) {
  HintedProgram prog{HintedProgram::Kind::bytecode, kFirstBit, {}};
  const auto tr = winner_trace(prog, 8, 64);
  ASSERT_FALSE(tr.empty());
  for (const auto& pt : tr) EXPECT_EQ(pt.cost, 3);
}

namespace {

SearchConfig quiet_config() {
  SearchConfig cfg;
  cfg.epsilon = 0;
  return cfg;
}

}  // namespace

TEST(Approach, PerfectCandidate) {
  const auto p = first_bit_problem(3);
  const auto goldens = goldens_by_enumeration(p, 3);
  Candidate c;
  c.program = kFirstBit;
  const auto rec = evaluate(c, goldens, 64);
  EXPECT_TRUE(rec.all_correct());
  EXPECT_EQ(rec.fn, 0u);
  EXPECT_EQ(rec.fp, 0u);
  EXPECT_GT(rec.tp, 0u);
  EXPECT_GT(rec.tn, 0u);
  EXPECT_EQ(rec.total_fuel, 3 * goldens.size());
}

TEST(Approach, ConstantOneRates) {
  const auto p = first_bit_problem(2);
  Candidate c;
  c.program = vm::parse_text("PUSH1\nOUTPUT\nHALT\n");
  const auto rec = evaluate(c, goldens_by_enumeration(p, 2), 64);
  EXPECT_EQ(rec.tp, 3u);
  EXPECT_EQ(rec.fp, 3u);
  EXPECT_EQ(rec.tn, 0u);
  EXPECT_EQ(rec.fn, 0u);
}

TEST(Approach, BoundGolden) {
  const std::vector<GoldenDatum> goldens = {GoldenDatum::bounds({1, 0}, 3, 7)};
  Candidate five;
  five.program = vm::parse_text("PUSH1\nOUTPUT\nPUSH0\nOUTPUT\nPUSH1\nOUTPUT\nHALT\n");
  EXPECT_TRUE(evaluate(five, goldens, 64).all_correct());
  Candidate two;
  two.program = vm::parse_text("PUSH0\nOUTPUT\nPUSH1\nOUTPUT\nPUSH0\nOUTPUT\nHALT\n");
  EXPECT_FALSE(evaluate(two, goldens, 64).all_correct());
  EXPECT_TRUE(GoldenDatum::bounds({}, std::nullopt, 4).accepts({1, 0, 0}));
  EXPECT_FALSE(GoldenDatum::bounds({}, 5, std::nullopt).accepts({1, 0, 0}));
}

TEST(Approach, CorrectCandidateBecomesAdequate) {
  const auto p = first_bit_problem(3);
  const auto goldens = goldens_by_enumeration(p, 3);
  auto s = make_state(quiet_config(), 1);
  const auto id = add_candidate(s, kFirstBit, HintStrategy::exhaustive);
  search_step(s, p, goldens);
  ASSERT_TRUE(s.adequate.count(3));
  EXPECT_EQ(s.adequate.at(3).candidate, id);
  EXPECT_EQ(s.adequate.at(3).worst_fuel, 3u);
  EXPECT_EQ(s.log.back().action, "adequate");
}

TEST(Approach, InaccurateCandidateIsTabu) {
  const auto p = first_bit_problem(2);
  auto s = make_state(quiet_config(), 1);
  const auto wrong = vm::parse_text("PUSH1\nOUTPUT\nHALT\n");
  const auto id = add_candidate(s, wrong, HintStrategy::exhaustive);
  search_step(s, p, goldens_by_enumeration(p, 2));
  EXPECT_TRUE(s.tabu.count(pair_digest(wrong, {})));
  EXPECT_EQ(find_candidate(s, id), nullptr);
  EXPECT_EQ(s.log.back().action, "tabu");
}

TEST(Approach, BanditPrefersFasterProgram) {
  const auto p = first_bit_problem(2);
  const auto goldens = goldens_by_enumeration(p, 2);
  auto s = make_state(quiet_config(), 5);
  const auto fast = add_candidate(s, kFirstBit, HintStrategy::exhaustive);
  const auto slow = add_candidate(s, padded_first_bit(28), HintStrategy::exhaustive);
  for (int i = 0; i < 50; ++i) search_step(s, p, goldens);
  EXPECT_GE(find_candidate(s, fast)->stats.pulls, 25u);
  EXPECT_GE(find_candidate(s, slow)->stats.pulls, 1u);
  EXPECT_EQ(find_candidate(s, fast)->stats.pulls + find_candidate(s, slow)->stats.pulls, 50u);
}

TEST(Approach, SelectCandidate) {
  auto s = make_state(quiet_config(), 2);
  const auto a = add_candidate(s, kFirstBit, HintStrategy::exhaustive);
  EXPECT_EQ(select_candidate(s, 0), a);
  s.promising[0].stats.pulls = 3;
  s.promising[0].stats.reward_sum = 1.5;
  const auto b = add_candidate(s, padded_first_bit(1), HintStrategy::mutation);
  EXPECT_EQ(select_candidate(s, 0), b);
  s.promising[1].stats.pulls = 1;
  auto t = s;
  EXPECT_EQ(select_candidate(s, 77), select_candidate(t, 77));
}

TEST(Approach, MonotoneSets) {
  const auto p = first_bit_problem(2);
  const auto goldens = goldens_by_enumeration(p, 2);
  SearchConfig cfg;
  cfg.epsilon = 0.3;
  auto s = make_state(cfg, 9);
  decltype(s.adequate) adequate;
  decltype(s.tabu) tabu;
  for (int i = 0; i < 300; ++i) {
    try {
      search_step(s, p, goldens);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::exhausted);
      break;
    }
    for (const auto& [n, e] : adequate) {
      ASSERT_TRUE(s.adequate.count(n));
      EXPECT_EQ(s.adequate.at(n), e);
    }
    for (auto d : tabu) EXPECT_TRUE(s.tabu.count(d));
    adequate = s.adequate;
    tabu = s.tabu;
  }
  EXPECT_FALSE(s.tabu.empty());
}

TEST(Checkpoint, RoundTripAndContinue) {
  const auto p = first_bit_problem(2);
  const auto goldens = goldens_by_enumeration(p, 2);
  SearchConfig cfg;
  cfg.snapshot_every = 2;
  auto s = make_state(cfg, 3);
  for (int i = 0; i < 40; ++i) search_step(s, p, goldens);
  auto copy = checkpoint_from_json(checkpoint_to_json(s));
  EXPECT_EQ(copy, s);
  for (int i = 0; i < 40; ++i) {
    search_step(s, p, goldens);
    search_step(copy, p, goldens);
  }
  EXPECT_EQ(copy, s);

  const auto path = std::filesystem::temp_directory_path() / "finitekit_ckpt_test.json";
  save_checkpoint(s, path.string());
  EXPECT_EQ(load_checkpoint(path.string()), s);
  std::filesystem::remove(path);
}

TEST(Checkpoint, Errors) {
  auto s = make_state(SearchConfig{}, 0);
  EXPECT_EQ(code_of([&] { checkpoint_to_json(s, 8); }), ErrorCode::budget);
  EXPECT_EQ(code_of([] { checkpoint_from_json("{not json"); }), ErrorCode::input);
  EXPECT_EQ(code_of([] { checkpoint_from_json("{\"version\": 99}"); }), ErrorCode::input);
}
