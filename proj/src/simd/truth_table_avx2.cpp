#include "finitekit/simd/truth_table.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define FK_HAVE_X86 1
#endif

namespace finitekit::simd {

#ifdef FK_HAVE_X86

__attribute__((target("avx2"))) static inline __m256i variable_vec(unsigned v, __m256i idx) {
  if (v < 6) return _mm256_set1_epi64x(static_cast<long long>(variable_word(v, 0)));
  const __m256i shifted =
      _mm256_and_si256(_mm256_srlv_epi64(idx, _mm256_set1_epi64x(v - 6)), _mm256_set1_epi64x(1));
  return _mm256_cmpeq_epi64(shifted, _mm256_set1_epi64x(1));
}

__attribute__((target("avx2"))) void truth_table_avx2(const std::int32_t* lits,
                                                      std::size_t clauses, unsigned vars,
                                                      std::uint64_t* out) {
  const std::size_t words = truth_table_words(vars);
  if (words < 4) {
    truth_table_scalar(lits, clauses, vars, out);
    return;
  }
  const __m256i ones = _mm256_set1_epi64x(-1);
  for (std::size_t w = 0; w < words; w += 4) {
    const __m256i idx = _mm256_set_epi64x(static_cast<long long>(w + 3), static_cast<long long>(w + 2),
                                          static_cast<long long>(w + 1), static_cast<long long>(w));
    __m256i acc = ones;
    for (std::size_t c = 0; c < clauses; ++c) {
      __m256i any = _mm256_setzero_si256();
      for (int j = 0; j < 3; ++j) {
        const std::int32_t lit = lits[3 * c + j];
        const __m256i x = variable_vec(static_cast<unsigned>(std::abs(lit) - 1), idx);
        any = _mm256_or_si256(any, lit > 0 ? x : _mm256_xor_si256(x, ones));
      }
      acc = _mm256_and_si256(acc, any);
      if (_mm256_testz_si256(acc, acc)) break;
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + w), acc);
  }
}

#else

void truth_table_avx2(const std::int32_t* lits, std::size_t clauses, unsigned vars,
                      std::uint64_t* out) {
  truth_table_scalar(lits, clauses, vars, out);
}

#endif

}  // namespace finitekit::simd
