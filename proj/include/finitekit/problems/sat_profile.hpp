#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finitekit/problems/sat.hpp"

namespace finitekit::problems {

struct ProfiledInstance {
  Cnf3Instance instance;
  bool planted = false;
};

struct InstanceStats {
  std::size_t index = 0;  // position in the input list
  std::uint64_t steps = 0;
  bool timeout = false;
  SatVerdict::Kind verdict = SatVerdict::Kind::timeout;
  double ratio = 0;  // clauses per variable
  bool decomposable = false;
  bool planted = false;
};

/// Counts per (clause/variable band, decomposable, planted) cell.
struct FeatureRow {
  std::string band;
  bool decomposable = false;
  bool planted = false;
  std::size_t count = 0;
  std::size_t timeouts = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t median_steps = 0;
};

struct HardnessProfile {
  std::vector<InstanceStats> instances;
  std::vector<FeatureRow> table;
  std::size_t excluded = 0;  // decomposable instances skipped by the filter
};

/// Ratio bands: below 2 and above 5 are the easy tails.
std::string ratio_band(double ratio);

HardnessProfile sat_hardness_profile(const std::vector<ProfiledInstance>& instances,
                                     std::uint64_t step_budget, bool skip_decomposable = false,
                                     unsigned workers = 1);

std::uint64_t median(std::vector<std::uint64_t> values);

}  // namespace finitekit::problems
