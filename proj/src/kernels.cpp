#include "camolut/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace camolut::kern {
namespace {

const Ops* resolve() {
  const char* want = std::getenv("CAMOLUT_KERNEL");
#if defined(__x86_64__) || defined(_M_X64)
  if (want) {
    if (!std::strcmp(want, "scalar")) return &scalar_ops();
    if (!std::strcmp(want, "avx2") && avx2_supported()) return &avx2_ops();
    return &scalar_ops();
  }
  if (avx2_supported()) return &avx2_ops();
  return &scalar_ops();
#elif defined(__aarch64__) || defined(__ARM_NEON)
  if (want && !std::strcmp(want, "scalar")) return &scalar_ops();
  return &neon_ops();
#else
  (void)want;
  return &scalar_ops();
#endif
}

}  // namespace

const Ops& ops() {
  static const Ops* chosen = resolve();
  return *chosen;
}

const char* active_backend() { return ops().name; }

}  // namespace camolut::kern
