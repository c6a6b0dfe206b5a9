#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "finitekit/annex/annex.hpp"
#include "finitekit/complexity/classify.hpp"
#include "finitekit/search/approach.hpp"
#include "finitekit/search/checkpoint.hpp"
#include "finitekit/search/lookup.hpp"
#include "finitekit/search/optimal.hpp"
#include "finitekit/search/packs.hpp"
#include "finitekit/util/base64.hpp"
#include "finitekit/util/error.hpp"

namespace fk = finitekit;
namespace cx = finitekit::complexity;
namespace se = finitekit::search;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string format = "json";
  unsigned workers = 0;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 64;
  std::string out_dir = ".";
  std::string checkpoint;
  std::string resume;
};

unsigned resolve_workers(unsigned flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("FINITEKIT_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw fk::Error(fk::ErrorCode::input, "FINITEKIT_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

std::filesystem::path out_path(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return std::filesystem::path(c.out_dir) / name;
}

void write_file(const std::filesystem::path& p, const std::string& data) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw fk::Error(fk::ErrorCode::input, "cannot write " + p.string());
  f << data;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw fk::Error(fk::ErrorCode::input, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json label_json(const cx::ClassLabel& l) {
  json j{{"label", l.to_string()}, {"level", cx::level_name(l.level)}};
  if (l.log_rank) j["log_rank"] = l.log_rank->to_string();
  if (l.poly_rank) j["poly_rank"] = l.poly_rank->to_string();
  if (l.exp_rank) j["exp_rank"] = l.exp_rank->to_string();
  return j;
}

// classify

int cmd_classify(const Common& c, const std::string& path, const std::string& range_text) {
  const auto trace = cx::RuntimeTrace::load_csv(path);
  const auto& pts = trace.points();
  cx::Range range = range_text.empty() ? cx::Range(std::max<std::uint64_t>(4, pts.front().n), pts.back().n)
                                       : cx::Range::parse(range_text);
  const auto label = cx::classify(trace, range);
  json j = label_json(label);
  j["range"] = range.to_string();
  j["grid"] = trace.grid() == cx::Grid::dense ? "dense" : "sampled";
  emit(c, j, label.to_string() + "\n");
  return 0;
}

// lookup

int cmd_lookup(const Common& c, const std::string& pack, std::uint64_t n0, std::size_t memory_mb) {
  const auto problem = se::problem_pack(pack)(n0);
  const auto built = se::build_lookup_hint(problem, n0, memory_mb << 20);
  auto solver = built.solver.instantiate();
  std::uint64_t max_probes = 0, correct = 0, total = 0;
  for (const auto& in : problem.universe(n0)) {
    auto r = solver->query(in, c.fuel);
    max_probes = std::max(max_probes, r.probes);
    correct += r.output && problem.verifier(in, *r.output);
    ++total;
  }
  const auto hint_path = out_path(c, pack + "_n0" + std::to_string(n0) + ".hint");
  write_file(hint_path, std::string(built.solver.hint.begin(), built.solver.hint.end()));
  json j{{"pack", pack},         {"n0", n0},           {"entries", built.entries},
         {"hint_bytes", built.solver.hint.size()},    {"hint_file", hint_path.string()},
         {"max_probes", max_probes}, {"correct", correct}, {"queries", total}};
  emit(c, j,
       "lookup " + pack + " n0=" + std::to_string(n0) + ": " + std::to_string(built.entries) + " entries, " +
           std::to_string(correct) + "/" + std::to_string(total) + " correct, max probes " +
           std::to_string(max_probes) + ", hint " + hint_path.string() + "\n");
  return 0;
}

// search (Approach 1 loop, or the exhaustive optimal search)

json record_json(const se::EvalRecord& r) {
  return {{"candidate", r.candidate}, {"goldens", r.outcomes.size()}, {"correct", r.correct},
          {"total_fuel", r.total_fuel}, {"tp", r.tp}, {"fn", r.fn}, {"tn", r.tn}, {"fp", r.fp}};
}

struct SearchKnobs {
  std::string mode = "approach";
  std::uint64_t n0 = 3;
  std::uint64_t steps = 1000;
  std::size_t max_len = 3;
  std::size_t hint_bytes = 1;
  double epsilon = 0.1;
  std::uint64_t snapshot_every = 0;
  std::uint64_t trial_budget = std::uint64_t{1} << 32;
  std::size_t checkpoint_cap_mb = 64;
};

std::string program_text(const se::HintedProgram& p) {
  if (p.kind == se::HintedProgram::Kind::lookup) return "# native lookup solver; table in the hint file\n";
  return fk::vm::to_text(p.code);
}

void write_program(const Common& c, const std::string& stem, const se::HintedProgram& p, json& j) {
  const auto prog = out_path(c, stem + "_program.txt");
  const auto hint = out_path(c, stem + ".hint");
  write_file(prog, program_text(p));
  write_file(hint, std::string(p.hint.begin(), p.hint.end()));
  j["program_file"] = prog.string();
  j["hint_file"] = hint.string();
}

json winner_json(const se::Winner& w) {
  return {{"kind", w.program.kind == se::HintedProgram::Kind::lookup ? "lookup" : "bytecode"},
          {"program", fk::vm::to_text(w.program.code)},
          {"hint", fk::base64_encode(w.program.hint)},
          {"worst_fuel", w.worst_fuel},
          {"program_length", w.program_length},
          {"hint_bytes", w.hint_bytes},
          {"cursor", w.cursor.to_string()},
          {"hint_value", w.hint_value},
          {"describe", w.program.describe()}};
}

se::Winner winner_from(const json& j) {
  se::Winner w;
  w.program.kind = j.at("kind") == "lookup" ? se::HintedProgram::Kind::lookup : se::HintedProgram::Kind::bytecode;
  w.program.code = fk::vm::parse_text(j.at("program"));
  w.program.hint = fk::base64_decode(j.at("hint").get<std::string>());
  w.worst_fuel = j.at("worst_fuel");
  w.program_length = j.at("program_length");
  w.hint_bytes = j.at("hint_bytes");
  w.cursor = fk::vm::Cursor::parse(j.at("cursor"));
  w.hint_value = j.at("hint_value");
  return w;
}

int search_approach(const Common& c, const std::string& pack, const SearchKnobs& k) {
  const auto problem = se::problem_pack(pack)(k.n0);
  const auto goldens = se::goldens_by_enumeration(problem, k.n0);
  se::SearchState state;
  if (!c.resume.empty()) {
    state = se::load_checkpoint(c.resume);
  } else {
    se::SearchConfig cfg;
    cfg.programs = {k.max_len, k.n0, std::min<std::size_t>(k.hint_bytes * 8, k.max_len)};
    cfg.hint_bytes = k.hint_bytes;
    cfg.fuel_cap = c.fuel;
    cfg.snapshot_every = k.snapshot_every;
    cfg.epsilon = k.epsilon;
    state = se::make_state(cfg, c.seed);
  }
  std::uint64_t ran = 0;
  bool exhausted = false;
  for (; ran < k.steps; ++ran) {
    try {
      se::search_step(state, problem, goldens);
    } catch (const fk::Error& e) {
      if (e.code() != fk::ErrorCode::exhausted) throw;
      exhausted = true;
      break;
    }
  }
  if (!c.checkpoint.empty()) se::save_checkpoint(state, c.checkpoint, k.checkpoint_cap_mb << 20);

  json j{{"command", "search"}, {"mode", "approach"},       {"pack", pack},
         {"n0", k.n0},          {"steps_run", ran},         {"step", state.step},
         {"exhausted", exhausted}, {"promising", state.promising.size()}, {"tabu", state.tabu.size()}};
  json sizes = json::array();
  for (const auto& [n, e] : state.adequate) sizes.push_back({{"n", n}, {"candidate", e.candidate}, {"worst_fuel", e.worst_fuel}});
  j["adequate"] = std::move(sizes);
  std::string text = "search " + pack + ": " + std::to_string(ran) + " steps, " +
                     std::to_string(state.adequate.size()) + " adequate sizes\n";
  if (!state.adequate.empty()) {
    const auto& best = state.adequate.rbegin()->second;
    se::Candidate cand;
    cand.id = best.candidate;
    cand.program = best.program;
    cand.hint = best.hint;
    const auto rec = se::evaluate(cand, goldens, state.config.fuel_cap, state.config.snapshot_every);
    se::HintedProgram hp{se::HintedProgram::Kind::bytecode, best.program, best.hint};
    write_program(c, pack, hp, j);
    const auto eval_path = out_path(c, pack + "_eval.json");
    write_file(eval_path, record_json(rec).dump(1) + "\n");
    j["eval_file"] = eval_path.string();
    j["best"] = {{"n", state.adequate.rbegin()->first}, {"program", hp.describe()}, {"record", record_json(rec)}};
    text += "best at n=" + std::to_string(state.adequate.rbegin()->first) + ": " + hp.describe() + "\n";
  }
  if (!c.checkpoint.empty()) j["checkpoint"] = c.checkpoint;
  emit(c, j, text);
  return 0;
}

int search_optimal(const Common& c, const std::string& pack, const SearchKnobs& k) {
  const auto problem = se::problem_pack(pack)(k.n0);
  se::OptimalConfig cfg;
  cfg.program_max_len = k.max_len;
  cfg.hint_max_bytes = k.hint_bytes;
  cfg.fuel_cap = c.fuel;
  cfg.trial_budget = k.trial_budget;
  cfg.workers = c.workers;
  std::optional<se::OptimalResult> prev;
  if (!c.resume.empty()) {
    const json r = json::parse(read_file(c.resume));
    se::OptimalResult p;
    p.trials = r.at("trials");
    p.resume = fk::vm::Cursor::parse(r.at("resume"));
    p.lookup_tried = r.at("lookup_tried");
    if (!r.at("best").is_null()) p.best = winner_from(r.at("best"));
    prev = p;
    // --trial-budget counts the trials of this invocation.
    cfg.trial_budget = p.trials > UINT64_MAX - k.trial_budget ? UINT64_MAX : p.trials + k.trial_budget;
  }
  const auto res = se::optimal_search(problem, k.n0, cfg, prev ? &*prev : nullptr);
  json j{{"command", "search"}, {"mode", "optimal"}, {"pack", pack}, {"n0", k.n0},
         {"trials", res.trials}, {"complete", res.complete}};
  j["best"] = res.best ? winner_json(*res.best) : json(nullptr);
  std::string text = "optimal " + pack + " n0=" + std::to_string(k.n0) + ": " +
                     (res.best ? res.best->program.describe() + ", worst fuel " + std::to_string(res.best->worst_fuel)
                               : std::string("none")) + "\n";
  if (!res.complete) {
    const std::string path = c.checkpoint.empty() ? out_path(c, pack + "_optimal_resume.json").string() : c.checkpoint;
    json r{{"trials", res.trials}, {"resume", res.resume.to_string()}, {"lookup_tried", res.lookup_tried},
           {"best", j["best"]}};
    write_file(path, r.dump(1) + "\n");
    j["resume_file"] = path;
    emit(c, j, text + "trial budget exhausted; resume with --resume " + path + "\n");
    return kExitBudget;
  }
  if (res.best) write_program(c, pack, res.best->program, j);
  emit(c, j, text);
  return 0;
}

int cmd_doubling(const Common& c, const std::string& pack, std::uint64_t n_start, std::size_t window,
                 std::size_t max_rounds, const SearchKnobs& k) {
  se::OptimalConfig cfg;
  cfg.program_max_len = k.max_len;
  cfg.hint_max_bytes = k.hint_bytes;
  cfg.fuel_cap = c.fuel;
  cfg.trial_budget = k.trial_budget;
  cfg.workers = c.workers;
  const auto res = se::doubling_search(se::problem_pack(pack), n_start, window, cfg, max_rounds);
  json rounds = json::array();
  std::string text;
  for (const auto& r : res.rounds) {
    json rj{{"n", r.n}, {"trials", r.search.trials}, {"complete", r.search.complete}};
    rj["winner"] = r.search.best ? json(r.search.best->program.describe()) : json(nullptr);
    rj["worst_fuel"] = r.search.best ? json(r.search.best->worst_fuel) : json(nullptr);
    rj["label"] = r.label ? json(r.label->to_string()) : json(nullptr);
    text += "n=" + std::to_string(r.n) + "  " + (r.label ? r.label->to_string() : std::string("-")) + "  " +
            (r.search.best ? "fuel " + std::to_string(r.search.best->worst_fuel) : std::string("no winner")) + "\n";
    rounds.push_back(std::move(rj));
  }
  json j{{"command", "doubling"}, {"pack", pack}, {"window", window}, {"rounds", std::move(rounds)},
         {"stable", res.stable}, {"complete", res.complete}, {"note", res.note}};
  text += std::string(res.stable ? "stable" : "not stable") + "; note: " + res.note + "\n";
  emit(c, j, text);
  return res.complete ? 0 : kExitBudget;
}

int cmd_annex(const Common& c, const std::vector<std::string>& profile_flags, bool divide8,
              const std::string& out_file) {
  std::vector<fk::annex::HardwareProfile> profiles;
  for (const auto& p : profile_flags) profiles.push_back(fk::annex::HardwareProfile::parse(p));
  if (profiles.empty()) profiles = fk::annex::default_profiles();
  const auto cells = fk::annex::compute_cells(profiles, fk::annex::default_durations(), divide8);
  std::ostringstream out;
  if (c.format == "csv") {
    fk::annex::write_csv(out, cells);
  } else if (c.format == "text") {
    fk::annex::write_text(out, cells);
  } else {
    for (const auto& cell : cells)
      out << json{{"class", fk::annex::model_name(cell.model)}, {"duration_seconds", cell.duration.seconds},
                  {"profile", cell.profile}, {"budget_ops", cell.budget_ops.str()}, {"max_n", cell.max_n.str()}}
                 .dump()
          << '\n';
    out << json{{"note", fk::annex::kModelNote}}.dump() << '\n';
  }
  if (out_file.empty())
    std::cout << out.str();
  else
    write_file(out_file, out.str());
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool randomized) {
  sub->add_option("--format", c.format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  sub->add_option("--workers", c.workers, "worker threads (default FINITEKIT_WORKERS, then all cores)");
  sub->add_option("--fuel", c.fuel, "fuel cap per run")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out_dir, "directory for written artifacts");
  if (randomized) sub->add_option("--seed", c.seed, "session seed (required unless resuming)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finitekit: finite-case complexity classes and hinted-algorithm search"};
  app.require_subcommand(1);
  Common c;
  SearchKnobs k;

  auto* classify = app.add_subcommand("classify", "classify a runtime trace CSV (n,cost)");
  std::string trace_path, range_text;
  classify->add_option("trace", trace_path, "trace CSV")->required();
  classify->add_option("--range", range_text, "n1..n0 (default 4..last n)");
  add_common(classify, c, false);

  auto* lookup = app.add_subcommand("lookup", "build the answer-table hint for a problem pack");
  std::string pack;
  std::uint64_t n0 = 3;
  std::size_t memory_mb = 64;
  lookup->add_option("pack", pack, "problem pack")->required();
  lookup->add_option("--n0", n0, "largest input size");
  lookup->add_option("--memory-mb", memory_mb, "memory budget for the table");
  add_common(lookup, c, false);

  auto* search = app.add_subcommand("search", "search for a hinted program");
  search->add_option("pack", pack, "problem pack")->required();
  search->add_option("--mode", k.mode, "approach (bandit loop) or optimal (exhaustive)")
      ->check(CLI::IsMember({"approach", "optimal"}));
  search->add_option("--n0", k.n0, "largest input size");
  search->add_option("--steps", k.steps, "search steps to run (approach)");
  search->add_option("--max-len", k.max_len, "longest program enumerated");
  search->add_option("--hint-bytes", k.hint_bytes, "hint length (approach) or cap (optimal)");
  search->add_option("--epsilon", k.epsilon, "fresh-candidate probability (approach)");
  search->add_option("--snapshot-every", k.snapshot_every, "state digest interval in steps");
  search->add_option("--trial-budget", k.trial_budget, "program/hint pairs (optimal)");
  search->add_option("--checkpoint", c.checkpoint, "write the search state here");
  search->add_option("--resume", c.resume, "continue from a checkpoint");
  search->add_option("--checkpoint-cap-mb", k.checkpoint_cap_mb, "refuse checkpoints larger than this");
  add_common(search, c, true);

  auto* doubling = app.add_subcommand("doubling", "optimal search at n, 2n, 4n, ... until the class repeats");
  std::uint64_t n_start = 2;
  std::size_t window = 5, max_rounds = 8;
  k.max_len = 4;
  k.hint_bytes = 1 << 20;
  doubling->add_option("pack", pack, "problem pack")->required();
  doubling->add_option("--n-start", n_start, "first size");
  doubling->add_option("--window", window, "consecutive repeats needed");
  doubling->add_option("--max-rounds", max_rounds, "doublings at most");
  doubling->add_option("--max-len", k.max_len, "longest program enumerated");
  doubling->add_option("--hint-bytes", k.hint_bytes, "hint cap");
  doubling->add_option("--trial-budget", k.trial_budget, "program/hint pairs over all rounds");
  add_common(doubling, c, false);

  auto* annex = app.add_subcommand("annex", "maximum tractable sizes per class and hardware profile");
  std::vector<std::string> profiles;
  bool divide8 = false;
  std::string out_file;
  annex->add_option("--profile", profiles, "SCC, SCS, MCT, MCA or custom:RATE:CORES (repeatable)");
  annex->add_flag("--divide-exp-by-8", divide8, "divide the ExpRank=1 cells by 8");
  annex->add_option("--output", out_file, "write to a file instead of stdout");
  add_common(annex, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  // The search defaults differ between subcommands; restore the ones doubling changed.
  if (search->parsed()) {
    if (search->count("--max-len") == 0) k.max_len = 3;
    if (search->count("--hint-bytes") == 0) k.hint_bytes = 1;
    if (k.mode == "approach" && search->count("--seed") == 0 && c.resume.empty()) {
      std::cerr << "error: --seed is required for the approach search\n";
      return kExitInput;
    }
  }

  try {
    c.workers = resolve_workers(c.workers);
    if (classify->parsed()) return cmd_classify(c, trace_path, range_text);
    if (lookup->parsed()) return cmd_lookup(c, pack, n0, memory_mb);
    if (search->parsed()) return k.mode == "optimal" ? search_optimal(c, pack, k) : search_approach(c, pack, k);
    if (doubling->parsed()) return cmd_doubling(c, pack, n_start, window, max_rounds, k);
    if (annex->parsed()) return cmd_annex(c, profiles, divide8, out_file);
  } catch (const fk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == fk::ErrorCode::budget || e.code() == fk::ErrorCode::exhausted ? kExitBudget : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
