#include "hamsim/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace hamsim::kernels {

#ifdef HAMSIM_WITH_AVX2
const KernelTable* avx2_table();
#endif

const KernelTable* avx2_kernels() {
#ifdef HAMSIM_WITH_AVX2
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("HAMSIM_KERNELS");
        if (env && std::string_view(env) == "scalar")
            return &scalar_kernels();
        const KernelTable* fast = avx2_kernels();
        return fast ? fast : &scalar_kernels();
    }();
    return *chosen;
}

} // namespace hamsim::kernels
