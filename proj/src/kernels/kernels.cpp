#include "speclearn/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace speclearn::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* resolve() {
  const char* pref = std::getenv("SPECLEARN_KERNEL");
  if (pref != nullptr && std::strcmp(pref, "scalar") == 0)
    return &scalar_table();
  const Table* avx2 = avx2_table();
  if (pref != nullptr && std::strcmp(pref, "avx2") == 0)
    return (avx2 != nullptr && cpu_has_avx2()) ? avx2 : &scalar_table();
  return (avx2 != nullptr && cpu_has_avx2()) ? avx2 : &scalar_table();
}

}  // namespace

const Table& active() {
  static const Table* selected = resolve();
  return *selected;
}

}  // namespace speclearn::kernels
