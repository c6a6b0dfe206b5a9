#include "finitekit/annex/annex.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <algorithm>
#include <iomanip>
#include <map>

#include "finitekit/util/error.hpp"

namespace finitekit::annex {

namespace mp = boost::multiprecision;
using Real = mp::cpp_dec_float_50;

namespace {

Rational parse_decimal(const std::string& text) {
  const auto e = text.find_first_of("eE");
  const std::string mant = text.substr(0, e);
  long exp10 = 0;
  if (e != std::string::npos) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(text.substr(e + 1), &used);
      if (used != text.size() - e - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::input, "bad number '" + text + "'");
    }
  }
  BigInt digits = 0;
  long frac = 0;
  bool dot = false, any = false;
  for (char c : mant) {
    if (c == '.' && !dot) {
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      frac += dot;
      any = true;
    } else {
      throw Error(ErrorCode::input, "bad number '" + text + "'");
    }
  }
  if (!any) throw Error(ErrorCode::input, "bad number '" + text + "'");
  exp10 -= frac;
  if (std::abs(exp10) > 4000) throw Error(ErrorCode::input, "exponent out of range in '" + text + "'");
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(std::abs(exp10)));
  return exp10 >= 0 ? Rational(digits * scale) : Rational(digits, scale);
}

HardwareProfile make(std::string label, const char* rate, const char* cores) {
  return {std::move(label), parse_decimal(rate), numerator(parse_decimal(cores))};
}

Real log_cost(CostModel m, const Real& n) {
  const Real ln = mp::log(n);
  switch (m) {
    case CostModel::exp_rank1: return n;
    case CostModel::semipoly: return (1 + ln) * ln;
    case CostModel::poly: return n < 3 ? ln : (1 + mp::log(ln)) * ln;
    default: break;
  }
  throw Error(ErrorCode::unsupported, "no logarithmic cost for this model");
}

}  // namespace

HardwareProfile HardwareProfile::scc() { return make("SCC", "1e7", "1"); }
HardwareProfile HardwareProfile::scs() { return make("SCS", "8.3e13", "1"); }
HardwareProfile HardwareProfile::mct() { return make("MCT", "8.3e13", "2e6"); }
HardwareProfile HardwareProfile::mca() { return make("MCA", "8.3e13", "6e7"); }

HardwareProfile HardwareProfile::parse(const std::string& text) {
  if (text == "SCC") return scc();
  if (text == "SCS") return scs();
  if (text == "MCT") return mct();
  if (text == "MCA") return mca();
  if (text.rfind("custom:", 0) == 0) {
    const auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::input, "custom profile needs RATE:CORES");
    HardwareProfile p;
    p.label = "custom";
    p.rate = parse_decimal(rest.substr(0, colon));
    const Rational cores = parse_decimal(rest.substr(colon + 1));
    if (denominator(cores) != 1) throw Error(ErrorCode::input, "core count must be whole");
    p.cores = numerator(cores);
    if (p.rate <= 0 || p.cores < 1) throw Error(ErrorCode::input, "profile needs rate > 0 and cores >= 1");
    return p;
  }
  throw Error(ErrorCode::input, "unknown profile '" + text + "'");
}

std::vector<HardwareProfile> default_profiles() {
  return {HardwareProfile::scc(), HardwareProfile::scs(), HardwareProfile::mct(), HardwareProfile::mca()};
}

std::vector<Duration> default_durations() {
  constexpr std::uint64_t day = 86400, year = 365 * day;
  return {{"1 second", 1},        {"1 minute", 60},        {"1 hour", 3600},
          {"1 month", 30 * day},  {"1 year", year},        {"10 years", 10 * year},
          {"100 years", 100 * year}};
}

const char* model_name(CostModel m) {
  switch (m) {
    case CostModel::exp_rank1: return "ExpRank=1";
    case CostModel::semipoly: return "SemiPoly";
    case CostModel::poly: return "Poly";
    case CostModel::quadric: return "Quadric";
    case CostModel::linear: return "Linear";
  }
  return "?";
}

std::vector<CostModel> all_models() {
  return {CostModel::exp_rank1, CostModel::semipoly, CostModel::poly, CostModel::quadric, CostModel::linear};
}

BigInt budget(const HardwareProfile& profile, std::uint64_t seconds) {
  if (seconds < 1) throw Error(ErrorCode::input, "duration must be >= 1 second");
  const Rational ops = profile.rate * Rational(profile.cores) * Rational(seconds);
  return numerator(ops) / denominator(ops);
}

BigInt max_tractable(CostModel model, const BigInt& b) {
  if (b < 2) throw Error(ErrorCode::input, "budget must be >= 2");
  if (model == CostModel::linear) return b;
  if (model == CostModel::quadric) return mp::sqrt(b);
  const Real limit = mp::log(Real(b));
  auto fits = [&](const BigInt& n) { return log_cost(model, Real(n)) <= limit; };
  BigInt lo = 1, hi = 2;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<BudgetCell> compute_cells(const std::vector<HardwareProfile>& profiles,
                                      const std::vector<Duration>& durations, bool divide_exp_by_8) {
  std::vector<BudgetCell> cells;
  for (auto m : all_models())
    for (const auto& d : durations)
      for (const auto& p : profiles) {
        BudgetCell c{m, d, p.label, budget(p, d.seconds), 0};
        c.max_n = max_tractable(m, c.budget_ops);
        if (divide_exp_by_8 && m == CostModel::exp_rank1) c.max_n /= 8;
        cells.push_back(std::move(c));
      }
  return cells;
}

void write_csv(std::ostream& out, const std::vector<BudgetCell>& cells) {
  out << "class,duration_seconds,profile,budget_ops,max_n\n";
  for (const auto& c : cells)
    out << model_name(c.model) << ',' << c.duration.seconds << ',' << c.profile << ',' << c.budget_ops
        << ',' << c.max_n << '\n';
}

std::string short_number(const BigInt& v) {
  const std::string s = v.str();
  if (s.size() <= 4) return s;
  // Two significant digits, rounded half up, then written as m*10^k with k a multiple of 3.
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(s.size() - 2));
  BigInt top = (v + scale / 2) / scale;
  std::size_t exp = s.size() - 2;
  if (top >= 100) {
    top /= 10;
    ++exp;
  }
  const std::size_t k = (exp + 1) / 3 * 3;  // keep the mantissa in [0.1, 1000)
  const long shift = static_cast<long>(exp) - static_cast<long>(k);
  std::string mant = top.str();
  if (shift >= 0) {
    mant += std::string(static_cast<std::size_t>(shift), '0');
  } else {
    const std::size_t point = mant.size() - static_cast<std::size_t>(-shift);
    mant = (point == 0 ? "0" : mant.substr(0, point)) + "." + mant.substr(point);
    while (mant.back() == '0') mant.pop_back();
    if (mant.back() == '.') mant.pop_back();
  }
  return mant + "*10^" + std::to_string(k);
}

void write_text(std::ostream& out, const std::vector<BudgetCell>& cells) {
  std::vector<std::string> profiles, durations;
  for (const auto& c : cells) {
    if (std::find(profiles.begin(), profiles.end(), c.profile) == profiles.end()) profiles.push_back(c.profile);
    if (std::find(durations.begin(), durations.end(), c.duration.label) == durations.end())
      durations.push_back(c.duration.label);
  }
  for (auto m : all_models()) {
    std::map<std::pair<std::string, std::string>, std::string> grid;
    for (const auto& c : cells)
      if (c.model == m) grid[{c.duration.label, c.profile}] = short_number(c.max_n);
    if (grid.empty()) continue;
    out << std::left << std::setw(12) << model_name(m);
    for (const auto& p : profiles) out << std::right << std::setw(12) << p;
    out << '\n';
    for (const auto& d : durations) {
      out << std::left << std::setw(12) << d;
      for (const auto& p : profiles) out << std::right << std::setw(12) << grid[{d, p}];
      out << '\n';
    }
    out << '\n';
  }
  out << "note: " << kModelNote << '\n';
}

}  // namespace finitekit::annex
