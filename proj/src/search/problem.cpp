#include "finitekit/search/problem.hpp"

#include <bit>

#include "finitekit/util/error.hpp"

namespace finitekit::search {

void VerifiabilityThresholds::validate() const {
  if (!(v1 <= v2 && v2 <= v3 && v3 <= v4))
    throw Error(ErrorCode::input, "verifiability thresholds must satisfy v1 <= v2 <= v3 <= v4");
}

std::vector<BitString> ProblemStatement::universe(std::uint64_t n) const {
  std::vector<BitString> out;
  for (auto& s : all_bit_strings_up_to(n))
    if (!in_universe || in_universe(s)) out.push_back(std::move(s));
  return out;
}

void ProblemStatement::validate() const {
  if (name.empty()) throw Error(ErrorCode::input, "problem needs a name");
  if (!verifier) throw Error(ErrorCode::input, name + ": missing verifier");
  if (!in_universe) throw Error(ErrorCode::input, name + ": missing universe predicate");
  if (output_bits == 0 || output_bits > 63) throw Error(ErrorCode::input, name + ": output bits out of range");
  if (accuracy.sensitivity < 0 || accuracy.sensitivity > 1 || accuracy.specificity < 0 ||
      accuracy.specificity > 1)
    throw Error(ErrorCode::input, name + ": accuracy must lie in [0,1]");
  if (machine != MachineKind::classical) throw Error(ErrorCode::unsupported, "classical machines only");
  thresholds.validate();
}

const char* golden_kind_name(GoldenDatum::Kind kind) {
  switch (kind) {
    case GoldenDatum::Kind::exact: return "exact";
    case GoldenDatum::Kind::lower: return "lower";
    case GoldenDatum::Kind::upper: return "upper";
    case GoldenDatum::Kind::range: return "range";
  }
  return "?";
}

GoldenDatum GoldenDatum::exact_output(BitString input, BitString output) {
  GoldenDatum g;
  g.input = std::move(input);
  g.kind = Kind::exact;
  g.exact = std::move(output);
  return g;
}

GoldenDatum GoldenDatum::bounds(BitString input, std::optional<std::uint64_t> lo,
                                std::optional<std::uint64_t> hi) {
  if (!lo && !hi) throw Error(ErrorCode::input, "bound golden needs a lower or upper bound");
  GoldenDatum g;
  g.input = std::move(input);
  g.kind = lo && hi ? Kind::range : (lo ? Kind::lower : Kind::upper);
  g.lower = lo.value_or(0);
  g.upper = hi.value_or(~std::uint64_t{0});
  if (g.lower > g.upper) throw Error(ErrorCode::input, "golden lower bound above upper bound");
  return g;
}

bool GoldenDatum::accepts(const BitString& output) const {
  if (kind == Kind::exact) return output == exact;
  if (output.empty() || output.size() > 64) return false;
  const auto v = bits_to_uint(output);
  return v >= lower && v <= upper;
}

std::optional<BitString> first_accepted_output(const ProblemStatement& p, const BitString& input) {
  const std::uint64_t count = std::uint64_t{1} << p.output_bits;
  for (std::uint64_t v = 0; v < count; ++v) {
    BitString out = bits_from_uint(v, p.output_bits);
    if (p.verifier(input, out)) return out;
  }
  return std::nullopt;
}

std::vector<GoldenDatum> goldens_by_enumeration(const ProblemStatement& p, std::uint64_t n) {
  std::vector<GoldenDatum> out;
  for (auto& in : p.universe(n)) {
    auto ans = first_accepted_output(p, in);
    if (!ans) throw Error(ErrorCode::inconsistent, p.name + ": no accepted output for '" + bits_to_string(in) + "'");
    out.push_back(GoldenDatum::exact_output(std::move(in), std::move(*ans)));
  }
  return out;
}

namespace {

ProblemStatement decision(std::string name, std::uint64_t n0,
                          std::function<bool(const BitString&)> answer,
                          std::function<bool(const BitString&)> in_universe) {
  ProblemStatement p;
  p.name = std::move(name);
  p.n0 = n0;
  p.in_universe = std::move(in_universe);
  p.verifier = [answer = std::move(answer)](const BitString& in, const BitString& out) {
    return out.size() == 1 && (out[0] != 0) == answer(in);
  };
  p.thresholds = {n0, n0, n0, n0};
  return p;
}

auto any_input() {
  return [](const BitString&) { return true; };
}

}  // namespace

ProblemStatement first_bit_problem(std::uint64_t n0) {
  return decision(
      "first_bit", n0, [](const BitString& in) { return in[0] != 0; },
      [](const BitString& in) { return !in.empty(); });
}

ProblemStatement all_ones_problem(std::uint64_t n0) {
  return decision(
      "all_ones", n0,
      [](const BitString& in) {
        for (auto b : in)
          if (!b) return false;
        return true;
      },
      [n0](const BitString& in) { return in.size() == n0; });
}

ProblemStatement parity_problem(std::uint64_t n0) {
  return decision(
      "parity", n0,
      [](const BitString& in) {
        std::uint8_t x = 0;
        for (auto b : in) x ^= b;
        return x != 0;
      },
      any_input());
}

ProblemStatement constant_true_problem(std::uint64_t n0) {
  return decision("constant_true", n0, [](const BitString&) { return true; }, any_input());
}

problems::Cnf3Instance sat_selection(const problems::Cnf3Instance& mother, const BitString& input) {
  if (input.size() > mother.clauses.size())
    throw Error(ErrorCode::input, "selector longer than the mother instance");
  problems::Cnf3Instance inst;
  inst.n = mother.n;
  for (std::size_t j = 0; j < input.size(); ++j)
    if (input[j]) inst.clauses.push_back(mother.clauses[j]);
  return inst;
}

ProblemStatement sat_selector_problem(std::uint64_t n0, problems::Cnf3Instance mother) {
  if (n0 > mother.clauses.size())
    throw Error(ErrorCode::input, "n0 exceeds the mother instance's clause count");
  auto p = decision(
      "sat", n0,
      [mother](const BitString& in) {
        return problems::sat_decide_baseline(sat_selection(mother, in), 1u << 20).kind ==
               problems::SatVerdict::Kind::sat;
      },
      any_input());
  return p;
}

ProblemStatement alternating_problem(std::uint64_t n0) {
  const bool odd_round = (std::bit_width(n0) % 2) == 0;  // n0 = 2, 8, 32, ...
  return decision(
      "alternating", n0,
      [odd_round](const BitString& in) {
        if (!odd_round) return in[0] != 0;
        // Needs both ends of the input; out of reach for the short programs searched.
        return (in[0] ^ in[in.size() - 1] ^ (in.size() > 2 ? in[1] : 0)) != 0;
      },
      [n0](const BitString& in) { return in.size() == n0; });
}

}  // namespace finitekit::search
