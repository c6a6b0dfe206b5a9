#include "finitekit/simd/truth_table.hpp"

#include <cstdlib>

namespace finitekit::simd {

void truth_table_scalar(const std::int32_t* lits, std::size_t clauses, unsigned vars,
                        std::uint64_t* out) {
  const std::size_t words = truth_table_words(vars);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (std::size_t c = 0; c < clauses && acc; ++c) {
      std::uint64_t any = 0;
      for (int j = 0; j < 3; ++j) {
        const std::int32_t lit = lits[3 * c + j];
        const std::uint64_t x = variable_word(static_cast<unsigned>(std::abs(lit) - 1), w);
        any |= lit > 0 ? x : ~x;
      }
      acc &= any;
    }
    out[w] = acc;
  }
  if (vars < 6) out[0] &= (std::uint64_t{1} << (1u << vars)) - 1;
}

}  // namespace finitekit::simd
