#include <cstdlib>
#include <cstring>

#include "finitekit/simd/truth_table.hpp"

namespace finitekit::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {
bool force_scalar() {
  const char* env = std::getenv("FINITEKIT_SIMD");
  return env && std::strcmp(env, "scalar") == 0;
}
}  // namespace

TruthTableFn truth_table_kernel() {
  static const TruthTableFn fn = (!force_scalar() && cpu_has_avx2()) ? truth_table_avx2 : truth_table_scalar;
  return fn;
}

std::string_view truth_table_kernel_name() {
  return truth_table_kernel() == truth_table_avx2 ? "avx2" : "scalar";
}

}  // namespace finitekit::simd
