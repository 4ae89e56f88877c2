#include "ddvv/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace ddvv::kernels {

#if defined(DDVV_HAVE_AVX2_KERNELS)
const Backend& avx2_backend_impl();

namespace {
const Backend* avx2_if_supported() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &avx2_backend_impl();
  }
  return nullptr;
}
}  // namespace
#else
namespace {
const Backend* avx2_if_supported() { return nullptr; }
}  // namespace
#endif

namespace {

const Backend* pick_default() {
  if (const char* env = std::getenv("DDVV_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_backend();
    if (want == "avx2") {
      if (const Backend* b = avx2_if_supported()) return b;
      return &scalar_backend();  // requested lane unavailable, fall back
    }
  }
  if (const Backend* b = avx2_if_supported()) return b;
  return &scalar_backend();
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> s{pick_default()};
  return s;
}

}  // namespace

const Backend& active() { return *slot().load(std::memory_order_relaxed); }

bool set_active(std::string_view name) {
  if (name == "scalar") {
    slot().store(&scalar_backend(), std::memory_order_relaxed);
    return true;
  }
  if (name == "avx2") {
    if (const Backend* b = avx2_if_supported()) {
      slot().store(b, std::memory_order_relaxed);
      return true;
    }
  }
  return false;
}

std::vector<std::string> available() {
  std::vector<std::string> out{"scalar"};
  if (avx2_if_supported()) out.emplace_back("avx2");
  return out;
}

}  // namespace ddvv::kernels
