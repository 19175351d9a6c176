#include <cstdlib>
#include <cstring>

#include "capax/kernels.hpp"

namespace capax::kernels {

const Funcs& active() {
    static const Funcs* chosen = []() -> const Funcs* {
        const char* env = std::getenv("CAPAX_SIMD");
#if defined(CAPAX_BUILD_AVX2)
        bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_funcs();
        if (env && std::strcmp(env, "avx2") == 0) return has ? &avx2_funcs() : &scalar_funcs();
        if (has) return &avx2_funcs();
#else
        (void)env;
#endif
        return &scalar_funcs();
    }();
    return *chosen;
}

} // namespace capax::kernels
