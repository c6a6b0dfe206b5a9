#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace finitekit::problems {

struct FactorResult {
  bool timeout = false;
  std::vector<std::uint64_t> factors;  // prime factors with multiplicity, ascending
  std::uint64_t steps = 0;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

/// Trial division by 2..100, then Pollard rho with x^2 + c (c = 1, 2, ... on
/// failure) and Floyd cycle detection. One step per trial division and per
/// rho iteration. On timeout `factors` holds what was split off so far.
FactorResult factor_budgeted(std::uint64_t n, std::uint64_t step_budget);

struct HardPrimeList {
  std::vector<std::uint64_t> primes;  // flagged, ascending
  std::uint64_t step_budget = 0;
  std::uint64_t threshold = 0;        // 90th percentile of per-prime medians
  std::size_t candidates = 0;         // primes examined
  std::size_t timeouts = 0;           // budget misses over all trials
  std::vector<std::uint64_t> examined;
  std::vector<std::uint64_t> medians; // parallel to `examined`
};

/// Each prime p in [lo, hi) above the trial bound is paired with `partners`
/// seeded random primes q from the same range; p is flagged when its median
/// factor_budgeted step count on p*q exceeds the 90th percentile of medians.
HardPrimeList mine_hard_primes(std::uint64_t lo, std::uint64_t hi, std::uint64_t step_budget,
                               std::uint64_t seed, unsigned partners = 8, unsigned workers = 1);

/// Divides by each hint prime first (one step each), then falls back to
/// factor_budgeted on the cofactor with the budget that remains.
FactorResult factor_hinted(std::uint64_t n, const std::vector<std::uint64_t>& hints,
                           std::uint64_t step_budget);

void write_prime_list(std::ostream& out, const std::vector<std::uint64_t>& primes);
std::vector<std::uint64_t> read_prime_list(std::istream& in);

}  // namespace finitekit::problems
