#include "orbimf/monomial.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace orbimf {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

const MonoKernels* pick_default() {
    if (const char* env = std::getenv("ORBIMF_KERNELS")) {
        std::string v(env);
        if (v == "scalar") return &scalar_kernels();
    }
    if (avx2_kernels() && cpu_has_avx2()) return avx2_kernels();
    return &scalar_kernels();
}

std::atomic<const MonoKernels*>& slot() {
    static std::atomic<const MonoKernels*> k{pick_default()};
    return k;
}

}  // namespace

const MonoKernels& kernels() { return *slot().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view which) {
    if (which == "scalar") {
        slot().store(&scalar_kernels());
        return true;
    }
    if (which == "avx2") {
        if (!avx2_kernels() || !cpu_has_avx2()) return false;
        slot().store(avx2_kernels());
        return true;
    }
    if (which == "auto") {
        slot().store(avx2_kernels() && cpu_has_avx2() ? avx2_kernels() : &scalar_kernels());
        return true;
    }
    return false;
}

}  // namespace orbimf
