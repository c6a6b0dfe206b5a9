#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "finitekit/complexity/numeric.hpp"

namespace finitekit::annex {

struct HardwareProfile {
  std::string label;
  Rational rate;  // operations per second per core
  BigInt cores;

  static HardwareProfile scc();  // 1e7 x 1
  static HardwareProfile scs();  // 8.3e13 x 1
  static HardwareProfile mct();  // 8.3e13 x 2e6
  static HardwareProfile mca();  // 8.3e13 x 6e7
  /// "SCC", "SCS", "MCT", "MCA" or "custom:RATE:CORES" (RATE may be written 1e9).
  static HardwareProfile parse(const std::string& text);
};

std::vector<HardwareProfile> default_profiles();

struct Duration {
  std::string label;
  std::uint64_t seconds;
};

/// 1 s, 1 min, 1 h, 30-day month, 365-day year, 10 and 100 such years.
std::vector<Duration> default_durations();

enum class CostModel { exp_rank1, semipoly, poly, quadric, linear };

const char* model_name(CostModel m);
std::vector<CostModel> all_models();

/// rate x cores x seconds, floored to an integer when the rate is fractional.
BigInt budget(const HardwareProfile& profile, std::uint64_t seconds);

/// Largest n >= 1 whose cost fits the budget: e^n, n^(1+ln n), n^(1+ln ln n),
/// n^2, or n for Linear (which also covers PolyLog). Natural logarithms
/// throughout; comparisons in 50-digit decimal arithmetic, or exactly for
/// the quadric and linear rows.
BigInt max_tractable(CostModel model, const BigInt& budget);

struct BudgetCell {
  CostModel model;
  Duration duration;
  std::string profile;
  BigInt budget_ops;
  BigInt max_n;
};

/// Row-major over (model, duration, profile). With divide_exp_by_8 the
/// ExpRank=1 cells are divided by 8 (floored).
std::vector<BudgetCell> compute_cells(const std::vector<HardwareProfile>& profiles,
                                      const std::vector<Duration>& durations,
                                      bool divide_exp_by_8 = false);

inline constexpr const char* kModelNote =
    "cost models use base e (e^n, n^(1+ln n), n^(1+ln ln n)); the class definitions use base 2";

/// `class,duration_seconds,profile,budget_ops,max_n`
void write_csv(std::ostream& out, const std::vector<BudgetCell>& cells);
/// One aligned table per model, rows durations, columns profiles, then the model note.
void write_text(std::ostream& out, const std::vector<BudgetCell>& cells);

/// 3162, 18*10^3, 1.4*10^6: two significant digits once past 4 digits.
std::string short_number(const BigInt& v);

}  // namespace finitekit::annex
