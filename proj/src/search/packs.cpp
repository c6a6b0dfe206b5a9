#include "finitekit/search/packs.hpp"

#include <memory>
#include <mutex>

#include "finitekit/problems/factor.hpp"
#include "finitekit/problems/kc.hpp"
#include "finitekit/util/error.hpp"

namespace finitekit::search {

namespace {

std::shared_ptr<const problems::KcTable> kc_table(std::size_t bits) {
  static std::mutex mu;
  static std::shared_ptr<const problems::KcTable> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->max_bits() < bits)
    cached = std::make_shared<const problems::KcTable>(5, 64, std::max<std::size_t>(bits, 8));
  return cached;
}

std::uint64_t smallest_factor(std::uint64_t x) {
  if (x < 2) return 0;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return d;
  return x;
}

}  // namespace

ProblemStatement kc_problem(std::uint64_t n0) {
  if (n0 > 12) throw Error(ErrorCode::budget, "kc pack is limited to n0 <= 12");
  auto table = kc_table(n0);
  ProblemStatement p;
  p.name = "kc";
  p.n0 = n0;
  p.in_universe = [](const BitString&) { return true; };
  p.verifier = [table](const BitString& in, const BitString& out) {
    return out.size() == 1 && (out[0] != 0) == (problems::kc_reduction(*table, in) > 0);
  };
  p.thresholds = {n0, n0, n0, n0};
  return p;
}

ProblemStatement factor_problem(std::uint64_t n0) {
  if (n0 < 1 || n0 > 16) throw Error(ErrorCode::budget, "factor pack needs 1 <= n0 <= 16");
  ProblemStatement p;
  p.name = "factor";
  p.n0 = n0;
  p.output_bits = n0;
  p.output_bound = GrowthFormula::poly(1);
  p.in_universe = [](const BitString&) { return true; };
  p.verifier = [n0](const BitString& in, const BitString& out) {
    const std::uint64_t x = in.empty() ? 0 : bits_to_uint(in);
    return out.size() == n0 && bits_to_uint(out) == smallest_factor(x);
  };
  p.thresholds = {n0, n0, n0, n0};
  return p;
}

const problems::Cnf3Instance& sat_pack_mother() {
  static const problems::Cnf3Instance mother =
      problems::sat_generate(4, 16, 1, problems::GenMode::uniform).instance;
  return mother;
}

ProblemFactory problem_pack(const std::string& id) {
  if (id == "sat") return [](std::uint64_t n) { return sat_selector_problem(n, sat_pack_mother()); };
  if (id == "parity") return parity_problem;
  if (id == "allones") return all_ones_problem;
  if (id == "kc") return kc_problem;
  if (id == "factor") return factor_problem;
  if (id == "firstbit") return first_bit_problem;
  if (id == "true") return constant_true_problem;
  if (id == "alternating") return alternating_problem;
  throw Error(ErrorCode::input, "unknown problem pack '" + id + "'");
}

std::vector<std::string> pack_names() {
  return {"sat", "parity", "allones", "kc", "factor", "firstbit", "true", "alternating"};
}

}  // namespace finitekit::search
