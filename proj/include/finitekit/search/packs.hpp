#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finitekit/search/problem.hpp"

namespace finitekit::search {

/// Input = bit string s of length <= n0 (at most 12); answer = some output-only
/// program of length <= 5 produces s within 64 fuel and is shorter than the
/// literal emitter.
ProblemStatement kc_problem(std::uint64_t n0);

/// Input = integer x, MSB first, length <= n0 (at most 16); output = smallest
/// prime factor of x in n0 bits, 0 for x < 2.
ProblemStatement factor_problem(std::uint64_t n0);

/// The mother instance behind the "sat" pack: 16 distinct clauses over 4 variables.
const problems::Cnf3Instance& sat_pack_mother();

using ProblemFactory = std::function<ProblemStatement(std::uint64_t n0)>;

/// "sat", "parity", "allones", "kc", "factor", plus the toy packs "firstbit",
/// "true" and "alternating". Throws Error(input) for anything else.
ProblemFactory problem_pack(const std::string& id);
std::vector<std::string> pack_names();

}  // namespace finitekit::search
