#include "finitekit/problems/sat_profile.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <tuple>

namespace finitekit::problems {

std::string ratio_band(double ratio) {
  if (ratio < 2) return "<2";
  if (ratio < 3) return "2-3";
  if (ratio < 4) return "3-4";
  if (ratio <= 5) return "4-5";
  return ">5";
}

std::uint64_t median(std::vector<std::uint64_t> values) {
  if (values.empty()) return 0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

HardnessProfile sat_hardness_profile(const std::vector<ProfiledInstance>& instances,
                                     std::uint64_t step_budget, bool skip_decomposable,
                                     unsigned workers) {
  std::vector<InstanceStats> stats(instances.size());
  std::vector<char> keep(instances.size(), 1);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < instances.size(); i += stride) {
      const auto& p = instances[i];
      InstanceStats s;
      s.index = i;
      s.planted = p.planted;
      s.decomposable = sat_is_decomposable(p.instance);
      s.ratio = p.instance.n ? static_cast<double>(p.instance.clauses.size()) / p.instance.n : 0.0;
      if (skip_decomposable && s.decomposable) {
        keep[i] = 0;
        stats[i] = s;
        continue;
      }
      const auto v = sat_decide_baseline(p.instance, step_budget);
      s.steps = v.steps;
      s.verdict = v.kind;
      s.timeout = v.kind == SatVerdict::Kind::timeout;
      stats[i] = s;
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1 || instances.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  HardnessProfile out;
  std::map<std::tuple<std::string, bool, bool>, std::vector<std::uint64_t>> cells;
  std::map<std::tuple<std::string, bool, bool>, FeatureRow> rows;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (!keep[i]) {
      ++out.excluded;
      continue;
    }
    const auto& s = stats[i];
    out.instances.push_back(s);
    const auto key = std::make_tuple(ratio_band(s.ratio), s.decomposable, s.planted);
    auto& row = rows[key];
    row.band = std::get<0>(key);
    row.decomposable = s.decomposable;
    row.planted = s.planted;
    ++row.count;
    row.timeouts += s.timeout;
    row.total_steps += s.steps;
    cells[key].push_back(s.steps);
  }
  for (auto& [key, row] : rows) {
    row.median_steps = median(cells[key]);
    out.table.push_back(row);
  }
  return out;
}

}  // namespace finitekit::problems
