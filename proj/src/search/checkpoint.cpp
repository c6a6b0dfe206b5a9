#include "finitekit/search/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "finitekit/util/base64.hpp"
#include "finitekit/util/error.hpp"

namespace finitekit::search {

using nlohmann::json;

namespace {

std::string dbits(double d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(d)));
  return buf;
}

double from_dbits(const std::string& s) {
  return std::bit_cast<double>(static_cast<std::uint64_t>(std::stoull(s, nullptr, 16)));
}

json stats_json(const CandidateStats& s) {
  return {{"pulls", s.pulls}, {"successes", s.successes}, {"total_fuel", s.total_fuel},
          {"tp", s.tp},       {"fn", s.fn},               {"tn", s.tn},
          {"fp", s.fp},       {"reward_sum", dbits(s.reward_sum)}};
}

CandidateStats stats_from(const json& j) {
  CandidateStats s;
  s.pulls = j.at("pulls");
  s.successes = j.at("successes");
  s.total_fuel = j.at("total_fuel");
  s.tp = j.at("tp");
  s.fn = j.at("fn");
  s.tn = j.at("tn");
  s.fp = j.at("fp");
  s.reward_sum = from_dbits(j.at("reward_sum"));
  return s;
}

json counts_json(const std::array<std::uint64_t, 17>& a) { return json(std::vector<std::uint64_t>(a.begin(), a.end())); }

std::array<std::uint64_t, 17> counts_from(const json& j) {
  std::array<std::uint64_t, 17> a{};
  if (j.size() != a.size()) throw Error(ErrorCode::input, "checkpoint opcode counts have the wrong length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = j[i];
  return a;
}

}  // namespace

std::string checkpoint_to_json(const SearchState& s, std::size_t size_cap) {
  const auto& c = s.config;
  json j;
  j["version"] = kCheckpointVersion;
  j["config"] = {{"max_len", c.programs.max_len},
                 {"num_inputs", c.programs.num_inputs},
                 {"num_hint_bits", c.programs.num_hint_bits},
                 {"hint_bytes", c.hint_bytes},
                 {"fuel_cap", c.fuel_cap},
                 {"snapshot_every", c.snapshot_every},
                 {"epsilon", dbits(c.epsilon)},
                 {"exploration", dbits(c.exploration)},
                 {"hint_patience", c.hint_patience}};
  j["seed"] = s.seed;
  j["step"] = s.step;
  j["next_id"] = s.next_id;
  j["cursor"] = s.cursor.to_string();
  j["enumeration_exhausted"] = s.enumeration_exhausted;
  json cand = json::array();
  for (const auto& k : s.promising)
    cand.push_back({{"id", k.id},
                    {"program", vm::to_text(k.program)},
                    {"strategy", strategy_name(k.strategy)},
                    {"hint", base64_encode(k.hint)},
                    {"hint_counter", k.hint_counter},
                    {"best_correct", k.best_correct},
                    {"misses", k.misses},
                    {"stats", stats_json(k.stats)}});
  j["promising"] = std::move(cand);
  json adequate = json::array();
  for (const auto& [n, e] : s.adequate)
    adequate.push_back({{"n", n},
                        {"candidate", e.candidate},
                        {"program", vm::to_text(e.program)},
                        {"hint", base64_encode(e.hint)},
                        {"worst_fuel", e.worst_fuel},
                        {"step", e.step}});
  j["adequate"] = std::move(adequate);
  j["tabu"] = std::vector<std::uint64_t>(s.tabu.begin(), s.tabu.end());
  j["opcode_in_correct"] = counts_json(s.opcode_in_correct);
  j["opcode_in_wrong"] = counts_json(s.opcode_in_wrong);
  json log = json::array();
  for (const auto& e : s.log)
    log.push_back({{"step", e.step},
                   {"candidate", e.candidate},
                   {"correct", e.correct},
                   {"total", e.total},
                   {"fuel", e.fuel},
                   {"reward", dbits(e.reward)},
                   {"action", e.action}});
  j["log"] = std::move(log);
  std::string text = j.dump(1) + "\n";
  if (text.size() > size_cap)
    throw Error(ErrorCode::budget, "checkpoint of " + std::to_string(text.size()) +
                                       " bytes exceeds the cap of " + std::to_string(size_cap));
  return text;
}

SearchState checkpoint_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("version") != kCheckpointVersion)
      throw Error(ErrorCode::input, "unsupported checkpoint version " + j.at("version").dump());
    SearchState s;
    const auto& c = j.at("config");
    s.config.programs.max_len = c.at("max_len");
    s.config.programs.num_inputs = c.at("num_inputs");
    s.config.programs.num_hint_bits = c.at("num_hint_bits");
    s.config.hint_bytes = c.at("hint_bytes");
    s.config.fuel_cap = c.at("fuel_cap");
    s.config.snapshot_every = c.at("snapshot_every");
    s.config.epsilon = from_dbits(c.at("epsilon"));
    s.config.exploration = from_dbits(c.at("exploration"));
    s.config.hint_patience = c.at("hint_patience");
    s.seed = j.at("seed");
    s.step = j.at("step");
    s.next_id = j.at("next_id");
    s.cursor = vm::Cursor::parse(j.at("cursor"));
    s.enumeration_exhausted = j.at("enumeration_exhausted");
    for (const auto& k : j.at("promising")) {
      Candidate cd;
      cd.id = k.at("id");
      cd.program = vm::parse_text(k.at("program"));
      cd.strategy = parse_strategy(k.at("strategy"));
      cd.hint = base64_decode(k.at("hint").get<std::string>());
      cd.hint_counter = k.at("hint_counter");
      cd.best_correct = k.at("best_correct");
      cd.misses = k.at("misses");
      cd.stats = stats_from(k.at("stats"));
      s.promising.push_back(std::move(cd));
    }
    for (const auto& e : j.at("adequate"))
      s.adequate.emplace(e.at("n").get<std::uint64_t>(),
                         AdequateEntry{e.at("candidate"), vm::parse_text(e.at("program")),
                                       base64_decode(e.at("hint").get<std::string>()),
                                       e.at("worst_fuel"), e.at("step")});
    for (const auto& t : j.at("tabu")) s.tabu.insert(t.get<std::uint64_t>());
    s.opcode_in_correct = counts_from(j.at("opcode_in_correct"));
    s.opcode_in_wrong = counts_from(j.at("opcode_in_wrong"));
    for (const auto& e : j.at("log"))
      s.log.push_back(StepLog{e.at("step"), e.at("candidate"), e.at("correct"), e.at("total"),
                              e.at("fuel"), from_dbits(e.at("reward")), e.at("action")});
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::input, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const SearchState& state, const std::string& path, std::size_t size_cap) {
  const std::string text = checkpoint_to_json(state, size_cap);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::input, "cannot write checkpoint " + path);
  out << text;
}

SearchState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::input, "cannot read checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace finitekit::search
