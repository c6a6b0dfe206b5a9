#include "finitekit/search/approach.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finitekit/util/error.hpp"
#include "finitekit/util/rng.hpp"

namespace finitekit::search {

const char* strategy_name(HintStrategy s) {
  switch (s) {
    case HintStrategy::exhaustive: return "exhaustive";
    case HintStrategy::inductive: return "inductive";
    case HintStrategy::mutation: return "mutation";
  }
  return "?";
}

HintStrategy parse_strategy(const std::string& name) {
  if (name == "exhaustive") return HintStrategy::exhaustive;
  if (name == "inductive") return HintStrategy::inductive;
  if (name == "mutation") return HintStrategy::mutation;
  throw Error(ErrorCode::input, "unknown hint strategy '" + name + "'");
}

SearchState make_state(const SearchConfig& config, std::uint64_t seed) {
  if (config.fuel_cap < 1) throw Error(ErrorCode::input, "fuel cap must be >= 1");
  if (config.epsilon < 0 || config.epsilon > 1) throw Error(ErrorCode::input, "epsilon must lie in [0,1]");
  SearchState s;
  s.config = config;
  s.seed = seed;
  return s;
}

std::uint64_t pair_digest(const vm::Bytecode& program, const vm::Hint& hint) {
  std::uint64_t h = vm::code_hash(program);
  h = fnv1a(hint.data(), hint.size(), h ^ (hint.size() * 0x9e3779b97f4a7c15ULL));
  return h;
}

namespace {

bool reads_hint(const vm::Bytecode& code) {
  return std::any_of(code.begin(), code.end(), [](const vm::Instr& i) { return i.op == vm::Op::READ_HINT; });
}

vm::Hint initial_hint(const SearchConfig& cfg, const vm::Bytecode& code) {
  return reads_hint(code) ? vm::Hint(cfg.hint_bytes, 0) : vm::Hint{};
}

std::uint64_t step_seed(std::uint64_t seed, std::uint64_t step, std::uint64_t stream) {
  return mix_seed(seed ^ mix_seed(step * 2 + stream));
}

std::optional<std::uint64_t> add_fresh(SearchState& s) {
  if (s.enumeration_exhausted) return std::nullopt;
  vm::ProgramEnumerator programs(s.config.programs, s.cursor);
  while (auto code = programs.next()) {
    auto hint = initial_hint(s.config, *code);
    if (s.tabu.count(pair_digest(*code, hint))) continue;
    const bool present = std::any_of(s.promising.begin(), s.promising.end(),
                                     [&](const Candidate& c) { return c.program == *code; });
    if (present) continue;
    s.cursor = programs.cursor();
    const auto strategy = static_cast<HintStrategy>(s.next_id % 3);
    return add_candidate(s, std::move(*code), strategy, std::move(hint));
  }
  s.cursor = programs.cursor();
  s.enumeration_exhausted = true;
  return std::nullopt;
}

Candidate* find_mut(SearchState& s, std::uint64_t id) {
  for (auto& c : s.promising)
    if (c.id == id) return &c;
  return nullptr;
}

vm::Hint materialize(const SearchState& s, const Candidate& c, Rng& rng) {
  const std::size_t len = s.config.hint_bytes;
  if (len == 0 || !reads_hint(c.program)) return c.hint;
  vm::Hint h(len, 0);
  const std::size_t bits = len * 8;
  switch (c.strategy) {
    case HintStrategy::exhaustive: {
      std::uint64_t v = c.hint_counter;
      for (std::size_t i = len; i-- > 0 && v;) {
        h[i] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
      }
      break;
    }
    case HintStrategy::inductive: {
      // Grow from the hint that already answered the largest size.
      const vm::Hint& base = s.adequate.empty() ? c.hint : s.adequate.rbegin()->second.hint;
      std::copy_n(base.begin(), std::min(base.size(), len), h.begin());
      if (c.stats.pulls > 0) {
        const std::size_t bit = (c.stats.pulls - 1) % bits;
        h[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
      }
      break;
    }
    case HintStrategy::mutation: {
      std::copy_n(c.hint.begin(), std::min(c.hint.size(), len), h.begin());
      if (s.promising.size() > 1 && rng.coin()) {
        const auto& other = s.promising[rng.below(s.promising.size())];
        const std::size_t cut = rng.below(len + 1);
        for (std::size_t i = cut; i < len && i < other.hint.size(); ++i) h[i] = other.hint[i];
      }
      const std::size_t bit = rng.below(bits);
      h[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
      break;
    }
  }
  return h;
}

// r >= num/den for a rate r = hits/total, exactly.
bool meets(std::uint64_t hits, std::uint64_t total, const Rational& need) {
  if (total == 0) return true;
  return Rational(BigInt(hits), BigInt(total)) >= need;
}

}  // namespace

std::uint64_t add_candidate(SearchState& state, vm::Bytecode program, HintStrategy strategy,
                            vm::Hint hint) {
  Candidate c;
  c.id = state.next_id++;
  c.program = std::move(program);
  c.strategy = strategy;
  c.hint = std::move(hint);
  state.promising.push_back(std::move(c));
  return state.promising.back().id;
}

const Candidate* find_candidate(const SearchState& state, std::uint64_t id) {
  for (const auto& c : state.promising)
    if (c.id == id) return &c;
  return nullptr;
}

std::uint64_t select_candidate(SearchState& state, std::uint64_t seed) {
  for (const auto& c : state.promising)
    if (c.stats.pulls == 0) return c.id;
  Rng rng(seed);
  if (state.promising.empty() || rng.unit() < state.config.epsilon) {
    if (auto id = add_fresh(state)) return *id;
    if (state.promising.empty()) throw Error(ErrorCode::exhausted, "no candidates left to try");
  }
  std::uint64_t total = 0;
  for (const auto& c : state.promising) total += c.stats.pulls;
  const double log_total = std::log(static_cast<double>(total));
  const Candidate* best = nullptr;
  double best_score = 0;
  for (const auto& c : state.promising) {
    const double n = static_cast<double>(c.stats.pulls);
    const double score = c.stats.reward_sum / n + state.config.exploration * std::sqrt(log_total / n);
    if (!best || score > best_score) {
      best = &c;
      best_score = score;
    }
  }
  return best->id;
}

EvalRecord evaluate(const Candidate& candidate, const std::vector<GoldenDatum>& goldens,
                    std::uint64_t fuel_cap, std::uint64_t snapshot_every) {
  EvalRecord rec;
  rec.candidate = candidate.id;
  std::vector<std::size_t> order(goldens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return goldens[a].input.size() < goldens[b].input.size();
  });
  vm::Interpreter interp;
  for (const std::size_t gi : order) {
    const auto& g = goldens[gi];
    auto run = interp.run(candidate.program, candidate.hint, g.input, fuel_cap, snapshot_every);
    InputOutcome o;
    o.golden = gi;
    o.status = run.status;
    o.fuel = run.fuel_used;
    o.correct = run.status == vm::Status::halted && run.output && g.accepts(*run.output);
    if (snapshot_every) {
      const auto d = vm::digest(run);
      o.summary_hash = d.output_hash ^ mix_seed(d.first.hash) ^ mix_seed(d.last.hash + d.fuel_used);
    }
    if (g.kind == GoldenDatum::Kind::exact && g.exact.size() == 1) {
      const bool positive = g.exact[0] != 0;
      const bool said = o.correct ? positive : !positive;
      if (positive)
        (said ? rec.tp : rec.fn)++;
      else
        (said ? rec.fp : rec.tn)++;
    }
    rec.total_fuel += o.fuel;
    rec.correct += o.correct;
    rec.outcomes.push_back(o);
  }
  if (!rec.outcomes.empty()) {
    const double n = static_cast<double>(rec.outcomes.size());
    const double economy = 1.0 - (static_cast<double>(rec.total_fuel) / n) / static_cast<double>(fuel_cap);
    rec.reward = static_cast<double>(rec.correct) / n * std::max(0.0, economy);
  }
  return rec;
}

void search_step(SearchState& state, const ProblemStatement& problem,
                 const std::vector<GoldenDatum>& goldens) {
  if (goldens.empty()) throw Error(ErrorCode::input, "search step needs golden data");
  const std::uint64_t step = state.step;
  const std::uint64_t id = select_candidate(state, step_seed(state.seed, step, 0));
  Rng rng(step_seed(state.seed, step, 1));
  Candidate* c = find_mut(state, id);

  const vm::Hint previous = c->hint;
  c->hint = materialize(state, *c, rng);
  if (c->strategy == HintStrategy::exhaustive) ++c->hint_counter;
  const EvalRecord rec = evaluate(*c, goldens, state.config.fuel_cap, state.config.snapshot_every);

  auto& st = c->stats;
  ++st.pulls;
  st.successes += rec.all_correct();
  st.total_fuel += rec.total_fuel;
  st.tp += rec.tp;
  st.fn += rec.fn;
  st.tn += rec.tn;
  st.fp += rec.fp;
  st.reward_sum += rec.reward;
  auto& counts = rec.all_correct() ? state.opcode_in_correct : state.opcode_in_wrong;
  for (const auto& ins : c->program) ++counts[static_cast<std::size_t>(ins.op)];

  StepLog entry{step, id, rec.correct, rec.outcomes.size(), rec.total_fuel, rec.reward, "eval"};

  const bool decision_goldens = rec.tp + rec.fn + rec.tn + rec.fp > 0;
  bool accurate;
  if (decision_goldens)
    accurate = meets(rec.tp, rec.tp + rec.fn, problem.accuracy.sensitivity) &&
               meets(rec.tn, rec.tn + rec.fp, problem.accuracy.specificity);
  else
    accurate = meets(rec.correct, rec.outcomes.size(),
                     std::min(problem.accuracy.sensitivity, problem.accuracy.specificity));

  // Sizes answered in full, before the candidate can be retired.
  std::map<std::uint64_t, std::pair<bool, std::uint64_t>> sizes;  // n -> (all correct, worst fuel)
  for (const auto& o : rec.outcomes) {
    auto [it, fresh] = sizes.try_emplace(goldens[o.golden].input.size(), true, 0);
    it->second.first = it->second.first && o.correct;
    it->second.second = std::max(it->second.second, o.fuel);
  }
  for (const auto& [n, v] : sizes) {
    if (!v.first || state.adequate.count(n)) continue;
    state.adequate.emplace(n, AdequateEntry{id, c->program, c->hint, v.second, step});
    entry.action = "adequate";
  }

  if (!accurate) {
    state.tabu.insert(pair_digest(c->program, c->hint));
    entry.action = "tabu";
    if (!reads_hint(c->program) || ++c->misses >= state.config.hint_patience)
      state.promising.erase(state.promising.begin() + (c - state.promising.data()));
    else
      c->hint = previous;
  } else {
    c->misses = 0;
    if (rec.correct >= c->best_correct)
      c->best_correct = rec.correct;
    else
      c->hint = previous;
  }
  state.log.push_back(std::move(entry));
  ++state.step;
}

}  // namespace finitekit::search
