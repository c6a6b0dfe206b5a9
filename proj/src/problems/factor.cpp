#include "finitekit/problems/factor.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "finitekit/problems/sat_profile.hpp"
#include "finitekit/util/error.hpp"
#include "finitekit/util/rng.hpp"

namespace finitekit::problems {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

constexpr std::uint64_t kTrialBound = 100;

// Splits n (composite, no factor <= 100) into a nontrivial divisor, or 0 when
// the budget runs out.
std::uint64_t rho(std::uint64_t n, std::uint64_t& steps, std::uint64_t budget) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      if (steps >= budget) return 0;
      ++steps;
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

// Appends prime factors of n; false on timeout.
bool split(std::uint64_t n, std::vector<std::uint64_t>& out, std::uint64_t& steps,
           std::uint64_t budget) {
  if (n == 1) return true;
  if (is_prime(n)) {
    out.push_back(n);
    return true;
  }
  const std::uint64_t d = rho(n, steps, budget);
  if (d == 0) return false;
  return split(d, out, steps, budget) && split(n / d, out, steps, budget);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

FactorResult factor_budgeted(std::uint64_t n, std::uint64_t step_budget) {
  if (n < 2) throw Error(ErrorCode::input, "factor needs N >= 2");
  FactorResult r;
  std::uint64_t m = n;
  for (std::uint64_t d = 2; d <= kTrialBound && d * d <= m; ++d) {
    while (true) {
      if (r.steps >= step_budget) {
        r.timeout = true;
        return r;
      }
      ++r.steps;
      if (m % d != 0) break;
      r.factors.push_back(d);
      m /= d;
    }
  }
  if (!split(m, r.factors, r.steps, step_budget)) r.timeout = true;
  std::sort(r.factors.begin(), r.factors.end());
  return r;
}

FactorResult factor_hinted(std::uint64_t n, const std::vector<std::uint64_t>& hints,
                           std::uint64_t step_budget) {
  if (n < 2) throw Error(ErrorCode::input, "factor needs N >= 2");
  if (hints.empty()) return factor_budgeted(n, step_budget);
  FactorResult r;
  std::uint64_t m = n;
  for (auto h : hints) {
    if (m == 1) break;
    if (r.steps >= step_budget) {
      r.timeout = true;
      return r;
    }
    ++r.steps;
    if (h < 2) continue;
    while (m % h == 0) {
      r.factors.push_back(h);
      m /= h;
    }
  }
  if (m > 1) {
    if (is_prime(m)) {
      r.factors.push_back(m);
    } else {
      auto rest = factor_budgeted(m, step_budget - r.steps);
      r.steps += rest.steps;
      r.timeout = rest.timeout;
      r.factors.insert(r.factors.end(), rest.factors.begin(), rest.factors.end());
    }
  }
  std::sort(r.factors.begin(), r.factors.end());
  return r;
}

HardPrimeList mine_hard_primes(std::uint64_t lo, std::uint64_t hi, std::uint64_t step_budget,
                               std::uint64_t seed, unsigned partners, unsigned workers) {
  std::vector<std::uint64_t> pool;
  for (auto p : primes_below(hi))
    if (p >= lo && p > kTrialBound) pool.push_back(p);
  if (pool.empty()) throw Error(ErrorCode::input, "no primes above 100 in the range");
  if (partners == 0) throw Error(ErrorCode::input, "need at least one partner per prime");

  HardPrimeList h;
  h.step_budget = step_budget;
  h.candidates = pool.size();
  h.examined = pool;
  h.medians.assign(pool.size(), 0);
  std::vector<std::size_t> misses(pool.size(), 0);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < pool.size(); i += stride) {
      Rng rng(mix_seed(seed ^ pool[i]));
      std::vector<std::uint64_t> steps;
      for (unsigned k = 0; k < partners; ++k) {
        const auto q = pool[rng.below(pool.size())];
        const auto r = factor_budgeted(pool[i] * q, step_budget);
        steps.push_back(r.steps);
        misses[i] += r.timeout;
      }
      h.medians[i] = median(steps);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
    for (auto& t : threads) t.join();
  }
  for (auto m : misses) h.timeouts += m;

  std::vector<std::uint64_t> sorted = h.medians;
  std::sort(sorted.begin(), sorted.end());
  h.threshold = sorted[std::min(sorted.size() * 9 / 10, sorted.size() - 1)];
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (h.medians[i] > h.threshold) h.primes.push_back(pool[i]);
  return h;
}

void write_prime_list(std::ostream& out, const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  for (auto p : sorted) out << p << '\n';
}

std::vector<std::uint64_t> read_prime_list(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::input, "line " + std::to_string(lineno) + ": not a decimal integer");
    out.push_back(std::stoull(line));
  }
  if (!std::is_sorted(out.begin(), out.end())) throw Error(ErrorCode::input, "prime list not sorted");
  return out;
}

}  // namespace finitekit::problems
