#include "pendantss/kernels.hpp"

namespace pendantss {
namespace kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Ops* avx2_ops_impl();

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  return avx2_ops_impl();
}
#else
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

const Ops* pick_auto() {
  if (const Ops* v = avx2_ops()) return v;
  return &scalar_ops();
}

const Ops*& current() {
  static const Ops* ops = pick_auto();
  return ops;
}

}  // namespace

const Ops& active() { return *current(); }

bool set_backend(std::string_view name) {
  if (name == "auto") {
    current() = pick_auto();
    return true;
  }
  if (name == "scalar") {
    current() = &scalar_ops();
    return true;
  }
  if (name == "avx2") {
    if (const Ops* v = avx2_ops()) {
      current() = v;
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace kernels
}  // namespace pendantss
