#include "finitekit/problems/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "finitekit/simd/truth_table.hpp"
#include "finitekit/util/error.hpp"
#include "finitekit/util/rng.hpp"

namespace finitekit::problems {

void Cnf3Instance::validate() const {
  if (n > 255) throw Error(ErrorCode::input, "at most 255 variables");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    for (int j = 0; j < 3; ++j) {
      const auto v = std::abs(c[j]);
      if (c[j] == 0 || v > static_cast<std::int32_t>(n))
        throw Error(ErrorCode::input, "clause " + std::to_string(i) + ": literal out of range");
    }
    if (std::abs(c[0]) == std::abs(c[1]) || std::abs(c[0]) == std::abs(c[2]) ||
        std::abs(c[1]) == std::abs(c[2]))
      throw Error(ErrorCode::input, "clause " + std::to_string(i) + ": repeated variable");
  }
}

unsigned Cnf3Instance::index_width(unsigned n) {
  unsigned w = 1;
  while (n > 1 && (1u << w) < n) ++w;
  return w;
}

BitString Cnf3Instance::encode() const {
  validate();
  if (clauses.size() > 255) throw Error(ErrorCode::input, "at most 255 clauses encode");
  BitString out = bits_from_uint(n, 8);
  const auto m = bits_from_uint(clauses.size(), 8);
  out.insert(out.end(), m.begin(), m.end());
  const unsigned w = index_width(n);
  for (const auto& c : clauses)
    for (auto lit : c) {
      out.push_back(lit < 0 ? 1 : 0);
      const auto idx = bits_from_uint(static_cast<std::uint64_t>(std::abs(lit) - 1), w);
      out.insert(out.end(), idx.begin(), idx.end());
    }
  return out;
}

Cnf3Instance Cnf3Instance::decode(const BitString& bits) {
  if (bits.size() < 16) throw Error(ErrorCode::input, "encoding shorter than its header");
  Cnf3Instance inst;
  inst.n = static_cast<unsigned>(bits_to_uint(BitString(bits.begin(), bits.begin() + 8)));
  const auto m = bits_to_uint(BitString(bits.begin() + 8, bits.begin() + 16));
  const unsigned w = index_width(inst.n);
  if (bits.size() != 16 + m * 3 * (1 + w))
    throw Error(ErrorCode::input, "encoding length does not match its header");
  std::size_t pos = 16;
  for (std::uint64_t i = 0; i < m; ++i) {
    Clause c{};
    for (int j = 0; j < 3; ++j) {
      const bool neg = bits[pos++] != 0;
      const auto idx = bits_to_uint(BitString(bits.begin() + pos, bits.begin() + pos + w));
      pos += w;
      c[j] = static_cast<std::int32_t>(idx + 1) * (neg ? -1 : 1);
    }
    inst.clauses.push_back(c);
  }
  inst.validate();
  return inst;
}

std::string Cnf3Instance::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << n << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return os.str();
}

Cnf3Instance Cnf3Instance::read_dimacs(std::istream& in) {
  Cnf3Instance inst;
  std::string line;
  bool header = false;
  std::size_t declared = 0;
  std::vector<std::int32_t> pending;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> inst.n >> declared) || fmt != "cnf")
        throw Error(ErrorCode::input, "line " + std::to_string(lineno) + ": bad problem line");
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorCode::input, "clause before problem line");
    ls.clear();
    ls.str(line);
    long long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw Error(ErrorCode::input,
                      "line " + std::to_string(lineno) + ": clause without exactly 3 literals");
        inst.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(static_cast<std::int32_t>(lit));
      }
    }
    if (!ls.eof()) throw Error(ErrorCode::input, "line " + std::to_string(lineno) + ": bad literal");
  }
  if (!header) throw Error(ErrorCode::input, "missing problem line");
  if (!pending.empty()) throw Error(ErrorCode::input, "unterminated clause");
  if (inst.clauses.size() != declared) throw Error(ErrorCode::input, "clause count mismatch");
  inst.validate();
  return inst;
}

Cnf3Instance Cnf3Instance::parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (auto lit : c) {
    const bool v = a[static_cast<std::size_t>(std::abs(lit) - 1)] != 0;
    if (v == (lit > 0)) return true;
  }
  return false;
}

bool sat_verify(const Cnf3Instance& inst, const Assignment& a) {
  if (a.size() != inst.n)
    throw Error(ErrorCode::input, "assignment has " + std::to_string(a.size()) + " bits, formula " +
                                      std::to_string(inst.n) + " variables");
  return std::all_of(inst.clauses.begin(), inst.clauses.end(),
                     [&](const Clause& c) { return clause_satisfied(c, a); });
}

const char* verdict_name(SatVerdict::Kind k) {
  switch (k) {
    case SatVerdict::Kind::sat: return "sat";
    case SatVerdict::Kind::unsat: return "unsat";
    case SatVerdict::Kind::timeout: return "timeout";
  }
  return "?";
}

namespace {

class Dpll {
 public:
  Dpll(const Cnf3Instance& inst, std::uint64_t budget) : inst_(inst), budget_(budget), value_(inst.n, -1) {}

  SatVerdict solve() {
    SatVerdict v;
    const int r = search();
    v.steps = steps_;
    if (r == 1) {
      v.kind = SatVerdict::Kind::sat;
      v.model.resize(inst_.n);
      for (unsigned i = 0; i < inst_.n; ++i) v.model[i] = value_[i] == 1;
    } else {
      v.kind = r == 0 ? SatVerdict::Kind::unsat : SatVerdict::Kind::timeout;
    }
    return v;
  }

 private:
  // -1 unknown, 0 false, 1 true for literal `lit` under the current values.
  int lit_value(std::int32_t lit) const {
    const int x = value_[static_cast<std::size_t>(std::abs(lit) - 1)];
    if (x < 0) return -1;
    return lit > 0 ? x : 1 - x;
  }

  bool assign(std::int32_t var, int val) {
    if (steps_ == budget_) return false;
    ++steps_;
    value_[static_cast<std::size_t>(var - 1)] = static_cast<std::int8_t>(val);
    trail_.push_back(var);
    return true;
  }

  // 1 all satisfied, 0 conflict, 2 open, -1 out of budget.
  int propagate() {
    while (true) {
      bool changed = false;
      bool all_sat = true;
      for (const auto& c : inst_.clauses) {
        int unknown = 0;
        std::int32_t last = 0;
        bool sat = false;
        for (auto lit : c) {
          const int v = lit_value(lit);
          if (v == 1) {
            sat = true;
            break;
          }
          if (v < 0) {
            ++unknown;
            last = lit;
          }
        }
        if (sat) continue;
        all_sat = false;
        if (unknown == 0) return 0;
        if (unknown == 1) {
          if (!assign(std::abs(last), last > 0 ? 1 : 0)) return -1;
          changed = true;
        }
      }
      if (all_sat) return 1;
      if (!changed) return 2;
    }
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[static_cast<std::size_t>(trail_.back() - 1)] = -1;
      trail_.pop_back();
    }
  }

  // 1 sat, 0 unsat, -1 out of budget.
  int search() {
    const int p = propagate();
    if (p == 1) {
      for (auto& x : value_)
        if (x < 0) x = 0;
      return 1;
    }
    if (p <= 0) return p;
    std::int32_t var = 0;
    for (unsigned i = 0; i < inst_.n; ++i)
      if (value_[i] < 0) {
        var = static_cast<std::int32_t>(i + 1);
        break;
      }
    for (int val : {1, 0}) {
      const auto mark = trail_.size();
      if (!assign(var, val)) return -1;
      const int r = search();
      if (r != 0) return r;
      undo(mark);
    }
    return 0;
  }

  const Cnf3Instance& inst_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::vector<std::int8_t> value_;
  std::vector<std::int32_t> trail_;
};

std::vector<std::int32_t> flat_literals(const Cnf3Instance& inst) {
  std::vector<std::int32_t> lits;
  lits.reserve(inst.clauses.size() * 3);
  for (const auto& c : inst.clauses) lits.insert(lits.end(), c.begin(), c.end());
  return lits;
}

std::vector<std::uint64_t> model_mask(const Cnf3Instance& inst) {
  inst.validate();
  if (inst.n > simd::kMaxTruthTableVars)
    throw Error(ErrorCode::budget, "truth table limited to 30 variables");
  const auto lits = flat_literals(inst);
  std::vector<std::uint64_t> mask(simd::truth_table_words(inst.n));
  simd::truth_table_kernel()(lits.data(), inst.clauses.size(), inst.n, mask.data());
  return mask;
}

Clause canonical(Clause c) {
  std::sort(c.begin(), c.end());
  return c;
}

Clause random_clause(unsigned n, Rng& rng) {
  std::int32_t v[3];
  v[0] = static_cast<std::int32_t>(rng.below(n)) + 1;
  do v[1] = static_cast<std::int32_t>(rng.below(n)) + 1; while (v[1] == v[0]);
  do v[2] = static_cast<std::int32_t>(rng.below(n)) + 1; while (v[2] == v[0] || v[2] == v[1]);
  Clause c{};
  for (int j = 0; j < 3; ++j) c[j] = rng.coin() ? -v[j] : v[j];
  return c;
}

}  // namespace

SatVerdict sat_decide_baseline(const Cnf3Instance& inst, std::uint64_t step_budget) {
  inst.validate();
  return Dpll(inst, step_budget).solve();
}

std::uint64_t sat_count_models(const Cnf3Instance& inst) {
  const auto mask = model_mask(inst);
  std::uint64_t total = 0;
  for (auto w : mask) total += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return total;
}

std::optional<Assignment> sat_truth_table_model(const Cnf3Instance& inst) {
  const auto mask = model_mask(inst);
  for (std::size_t w = 0; w < mask.size(); ++w) {
    if (!mask[w]) continue;
    const std::uint64_t a = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(mask[w]));
    Assignment out(inst.n);
    for (unsigned v = 0; v < inst.n; ++v) out[v] = (a >> v) & 1;
    return out;
  }
  return std::nullopt;
}

Generated sat_generate(unsigned n, std::size_t m, std::uint64_t seed, GenMode mode,
                       const Cnf3Instance* mother) {
  Rng rng(seed);
  Generated g;
  if (mode == GenMode::subset_of_mother) {
    if (!mother) throw Error(ErrorCode::input, "subset mode needs a mother instance");
    if (m > mother->clauses.size())
      throw Error(ErrorCode::input, "subset larger than the mother instance");
    std::vector<std::size_t> idx(mother->clauses.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    g.instance.n = mother->n;
    for (auto i : idx) g.instance.clauses.push_back(mother->clauses[i]);
    return g;
  }
  if (m > 0 && n < 3) throw Error(ErrorCode::input, "clauses need at least 3 variables");
  const BigInt distinct = binomial(n, 3) * 8;
  const BigInt allowed = mode == GenMode::planted ? binomial(n, 3) * 7 : distinct;
  if (BigInt(m) > allowed) throw Error(ErrorCode::input, "more clauses requested than exist");
  g.instance.n = n;
  Assignment hidden;
  if (mode == GenMode::planted) {
    hidden.resize(n);
    for (auto& b : hidden) b = rng.coin();
  }
  std::set<Clause> used;
  while (g.instance.clauses.size() < m) {
    Clause c = random_clause(n, rng);
    if (mode == GenMode::planted && !clause_satisfied(c, hidden)) continue;
    if (!used.insert(canonical(c)).second) continue;
    g.instance.clauses.push_back(c);
  }
  if (mode == GenMode::planted) g.planted = hidden;
  return g;
}

Cnf3Instance full_mother3() {
  Cnf3Instance inst;
  inst.n = 3;
  for (int mask = 0; mask < 8; ++mask)
    inst.clauses.push_back({(mask & 4) ? -1 : 1, (mask & 2) ? -2 : 2, (mask & 1) ? -3 : 3});
  return inst;
}

bool sat_is_decomposable(const Cnf3Instance& inst) {
  if (inst.n == 0) return false;
  std::vector<std::vector<unsigned>> adj(inst.n);
  std::vector<bool> used(inst.n, false);
  for (const auto& c : inst.clauses) {
    for (int i = 0; i < 3; ++i) {
      const auto a = static_cast<unsigned>(std::abs(c[i]) - 1);
      used[a] = true;
      for (int j = 0; j < 3; ++j)
        if (i != j) adj[a].push_back(static_cast<unsigned>(std::abs(c[j]) - 1));
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) return true;
  std::vector<bool> seen(inst.n, false);
  std::vector<unsigned> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto w : adj[queue[head]])
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  return queue.size() != inst.n;
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
  if (BigInt(k) > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt sat_universe_size(unsigned n) {
  if (n < 3) throw Error(ErrorCode::input, "universe size needs n >= 3");
  const BigInt pool = BigInt(4) * n * (n - 1) * (n - 2) / 6;
  return binomial(pool, 4ull * n) * (BigInt(1) << (4 * n));
}

}  // namespace finitekit::problems
