#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace finitekit::simd {

/// Model mask of a 3-CNF over `vars` variables.
///
/// `lits` holds 3 signed, 1-based literals per clause. Bit a of the result
/// (word a/64, bit a%64) is set iff the assignment whose bit v is x_{v+1}
/// satisfies every clause. `out` must hold truth_table_words(vars) words;
/// for vars < 6 only the low 2^vars bits of word 0 are meaningful.
void truth_table_scalar(const std::int32_t* lits, std::size_t clauses, unsigned vars,
                        std::uint64_t* out);
void truth_table_avx2(const std::int32_t* lits, std::size_t clauses, unsigned vars,
                      std::uint64_t* out);

/// The AVX2 kernel on CPUs that report it, the scalar one otherwise.
using TruthTableFn = void (*)(const std::int32_t*, std::size_t, unsigned, std::uint64_t*);
TruthTableFn truth_table_kernel();
std::string_view truth_table_kernel_name();
bool cpu_has_avx2();

inline constexpr unsigned kMaxTruthTableVars = 30;

inline std::size_t truth_table_words(unsigned vars) {
  return vars <= 6 ? 1 : std::size_t{1} << (vars - 6);
}

/// Bit v of the assignment index, replicated across a 64-bit word `w`.
inline std::uint64_t variable_word(unsigned v, std::size_t w) {
  static constexpr std::uint64_t kLow[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
  };
  if (v < 6) return kLow[v];
  return ((w >> (v - 6)) & 1) ? ~std::uint64_t{0} : 0;
}

}  // namespace finitekit::simd
