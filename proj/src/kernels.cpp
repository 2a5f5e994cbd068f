#include "fpu/kernels.hpp"

#include <atomic>

namespace fpu::kernels {
namespace {

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
#if defined(__x86_64__)
    if (avx2_available()) return &avx2_backend();
#endif
    return &scalar_backend();
}

}  // namespace

#if defined(__x86_64__)
bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool select(std::string_view name) {
    if (name == "scalar") {
        g_active.store(&scalar_backend(), std::memory_order_release);
        return true;
    }
#if defined(__x86_64__)
    if (name == "avx2" && avx2_available()) {
        g_active.store(&avx2_backend(), std::memory_order_release);
        return true;
    }
#endif
    return false;
}

}  // namespace fpu::kernels
