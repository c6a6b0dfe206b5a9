#include "finitekit/search/optimal.hpp"

#include <algorithm>
#include <thread>
#include <tuple>

#include "finitekit/search/lookup.hpp"
#include "finitekit/util/error.hpp"

namespace finitekit::search {

bool Winner::better_than(const Winner& o) const {
  return std::tie(worst_fuel, program_length, hint_bytes, cursor.length, cursor.index, hint_value) <
         std::tie(o.worst_fuel, o.program_length, o.hint_bytes, o.cursor.length, o.cursor.index,
                  o.hint_value);
}

namespace {

// Accepted outputs per input, as a bit mask over output values when outputs
// are at most 6 bits wide; wider outputs go to the verifier each time.
struct Verdicts {
  const ProblemStatement* problem;
  std::vector<BitString> inputs;
  bool masked;
  std::vector<std::uint64_t> masks;

  Verdicts(const ProblemStatement& p, std::vector<BitString> in)
      : problem(&p), inputs(std::move(in)), masked(p.output_bits <= 6) {
    if (!masked) return;
    masks.reserve(inputs.size());
    for (const auto& x : inputs) {
      std::uint64_t m = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << p.output_bits); ++v)
        if (p.verifier(x, bits_from_uint(v, p.output_bits))) m |= std::uint64_t{1} << v;
      masks.push_back(m);
    }
  }

  bool ok(std::size_t i, const BitString& out) const {
    if (!masked) return problem->verifier(inputs[i], out);
    if (out.size() != problem->output_bits) return false;
    return (masks[i] >> bits_to_uint(out)) & 1;
  }
};

// Visits inputs in an order where the last one to reject a program goes first.
class Judge {
 public:
  explicit Judge(const Verdicts& v) : v_(v), order_(v.inputs.size()) {
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  }

  std::optional<std::uint64_t> worst_fuel(HintedSolver& solver, std::uint64_t limit) {
    std::uint64_t worst = 0;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      const std::size_t i = order_[k];
      auto r = solver.query(v_.inputs[i], limit);
      if (r.status != vm::Status::halted || !r.output || !v_.ok(i, *r.output)) {
        std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k),
                    order_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        return std::nullopt;
      }
      worst = std::max(worst, r.fuel_used);
    }
    return worst;
  }

 private:
  const Verdicts& v_;
  std::vector<std::size_t> order_;
};

struct Job {
  vm::Bytecode code;
  vm::Cursor cursor;
  std::vector<std::int32_t> reads;  // distinct READ_HINT operands, ascending
};

std::vector<std::int32_t> hint_reads(const vm::Bytecode& code) {
  std::vector<std::int32_t> reads;
  for (const auto& ins : code)
    if (ins.op == vm::Op::READ_HINT) reads.push_back(ins.arg);
  std::sort(reads.begin(), reads.end());
  reads.erase(std::unique(reads.begin(), reads.end()), reads.end());
  return reads;
}

// Best pair among the jobs [begin, end), pruned against `limit`.
std::optional<Winner> run_jobs(const std::vector<Job>& jobs, std::size_t begin, std::size_t end,
                               std::size_t stride, Judge& judge, std::uint64_t limit) {
  std::optional<Winner> best;
  for (std::size_t j = begin; j < end; j += stride) {
    const Job& job = jobs[j];
    const std::size_t hint_bytes = job.reads.empty() ? 0 : (static_cast<std::size_t>(job.reads.back()) + 8) / 8;
    const std::uint64_t variants = std::uint64_t{1} << job.reads.size();
    BytecodeSolver solver(job.code);
    for (std::uint64_t v = 0; v < variants; ++v) {
      vm::Hint hint(hint_bytes, 0);
      for (std::size_t i = 0; i < job.reads.size(); ++i)
        if ((v >> (job.reads.size() - 1 - i)) & 1) {
          const auto bit = static_cast<std::size_t>(job.reads[i]);
          hint[bit / 8] |= static_cast<std::uint8_t>(0x80 >> (bit % 8));
        }
      solver.initialize(hint);
      const std::uint64_t cap = best ? std::min(limit, best->worst_fuel) : limit;
      auto f = judge.worst_fuel(solver, cap);
      if (!f) continue;
      Winner w;
      w.program.kind = HintedProgram::Kind::bytecode;
      w.program.code = job.code;
      w.program.hint = std::move(hint);
      w.worst_fuel = *f;
      w.program_length = job.code.size();
      w.hint_bytes = hint_bytes;
      w.cursor = job.cursor;
      w.hint_value = v;
      if (!best || w.better_than(*best)) best = std::move(w);
    }
  }
  return best;
}

constexpr std::size_t kBatch = 4096;

}  // namespace

std::optional<std::uint64_t> worst_case_fuel(const HintedProgram& program,
                                             const ProblemStatement& problem,
                                             const std::vector<BitString>& inputs,
                                             std::uint64_t fuel_cap) {
  Verdicts verdicts(problem, inputs);
  Judge judge(verdicts);
  auto solver = program.instantiate();
  return judge.worst_fuel(*solver, fuel_cap);
}

OptimalResult optimal_search(const ProblemStatement& problem, std::uint64_t n0,
                             const OptimalConfig& config, const OptimalResult* previous) {
  if (config.program_max_len < 1) throw Error(ErrorCode::input, "program_max_len must be >= 1");
  if (config.fuel_cap < 1) throw Error(ErrorCode::input, "fuel cap must be >= 1");
  if (n0 > kMaxSearchN0)
    throw Error(ErrorCode::budget, "optimal search is limited to n0 <= " + std::to_string(kMaxSearchN0));
  if (previous && previous->complete) return *previous;

  OptimalResult res;
  vm::Cursor start{1, 0};
  if (previous) {
    res = *previous;
    start = previous->resume;
  }
  const Verdicts verdicts(problem, problem.universe(n0));
  const unsigned workers = std::max(1u, config.workers);
  std::vector<Judge> judges(workers, Judge(verdicts));

  auto offer = [&res](std::optional<Winner> w) {
    if (w && (!res.best || w->better_than(*res.best))) res.best = std::move(w);
  };

  if (config.include_lookup && !res.lookup_tried) {
    res.lookup_tried = true;
    ++res.trials;
    try {
      auto lk = build_lookup_hint(problem, n0, config.lookup_memory_bytes);
      if (lk.solver.hint.size() <= config.hint_max_bytes) {
        auto solver = lk.solver.instantiate();
        if (auto f = judges[0].worst_fuel(*solver, config.fuel_cap)) {
          Winner w;
          w.program = lk.solver;
          w.worst_fuel = *f;
          w.program_length = SIZE_MAX;
          w.hint_bytes = lk.solver.hint.size();
          offer(std::move(w));
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget) throw;
    }
  }

  vm::EnumConfig ec;
  ec.max_len = config.program_max_len;
  ec.num_inputs = n0;
  ec.num_hint_bits = std::min<std::size_t>(config.hint_max_bytes * 8, config.program_max_len);
  vm::ProgramEnumerator programs(ec, start);
  std::vector<Job> jobs;
  jobs.reserve(kBatch);

  bool stopped = false, exhausted = false;
  while (!stopped && !exhausted) {
    jobs.clear();
    while (jobs.size() < kBatch) {
      const vm::Cursor here = programs.cursor();
      auto code = programs.next();
      if (!code) {
        exhausted = true;
        break;
      }
      auto reads = hint_reads(*code);
      const std::uint64_t variants = std::uint64_t{1} << reads.size();
      if (res.trials + variants > config.trial_budget) {
        res.resume = here;
        stopped = true;
        break;
      }
      res.trials += variants;
      jobs.push_back({std::move(*code), programs.last(), std::move(reads)});
    }
    const std::uint64_t limit = res.best ? std::min(config.fuel_cap, res.best->worst_fuel) : config.fuel_cap;
    if (workers == 1 || jobs.size() < 64) {
      offer(run_jobs(jobs, 0, jobs.size(), 1, judges[0], limit));
      continue;
    }
    std::vector<std::optional<Winner>> found(workers);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] { found[t] = run_jobs(jobs, t, jobs.size(), workers, judges[t], limit); });
    for (auto& th : pool) th.join();
    for (auto& f : found) offer(std::move(f));
  }
  res.complete = exhausted;
  if (exhausted) res.resume = programs.cursor();
  return res;
}

std::vector<complexity::TracePoint> winner_trace(const HintedProgram& program, std::uint64_t n,
                                                 std::uint64_t fuel_cap) {
  if (n > kMaxSearchN0) throw Error(ErrorCode::budget, "winner traces are limited to n <= " + std::to_string(kMaxSearchN0));
  auto solver = program.instantiate();
  std::vector<complexity::TracePoint> pts;
  std::uint64_t running = 1;
  for (std::uint64_t m = 0; m <= n; ++m) {
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t v = 0; v < count; ++v) {
      auto r = solver->query(bits_from_uint(v, m), fuel_cap);
      running = std::max(running, r.fuel_used);
    }
    if (m >= 2) pts.push_back({m, BigInt(running)});
  }
  return pts;
}

DoublingResult doubling_search(const std::function<ProblemStatement(std::uint64_t)>& factory,
                               std::uint64_t n_start, std::size_t window,
                               const OptimalConfig& config, std::size_t max_rounds) {
  if (n_start < 2) throw Error(ErrorCode::input, "doubling search needs n_start >= 2");
  DoublingResult out;
  out.note = kStabilityNote;
  std::uint64_t spent = 0;
  std::size_t repeats = 0;
  std::uint64_t n = n_start;
  for (std::size_t round = 0; round < max_rounds; ++round, n *= 2) {
    OptimalConfig cfg = config;
    cfg.trial_budget = config.trial_budget - spent;
    DoublingRound r;
    r.n = n;
    try {
      r.search = optimal_search(factory(n), n, cfg);
      spent += r.search.trials;
      if (r.search.complete && r.search.best) {
        r.trace = winner_trace(r.search.best->program, n, config.fuel_cap);
        if (n >= 4)
          r.label = complexity::classify(complexity::RuntimeTrace(r.trace, complexity::Grid::dense),
                                         complexity::Range(4, n));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget) throw;
      out.complete = false;
      out.note += std::string("; stopped at n=") + std::to_string(n) + ": " + e.what();
      return out;
    }
    if (!r.search.complete) {
      out.complete = false;
      out.rounds.push_back(std::move(r));
      return out;
    }
    const bool have = r.label.has_value();
    const bool same = have && !out.rounds.empty() && out.rounds.back().label &&
                      out.rounds.back().label->to_string() == r.label->to_string();
    repeats = same ? repeats + 1 : 0;
    out.rounds.push_back(std::move(r));
    if (window == 0 || (have && repeats >= window)) {
      out.stable = true;
      return out;
    }
    if (!out.rounds.back().search.best) return out;
  }
  return out;
}

}  // namespace finitekit::search
