#include "simd_backends.hpp"

#include <cstdlib>
#include <cstring>

namespace mcor::simd {
namespace {

const Ops* detect() {
    if (const char* env = std::getenv("MCOR_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        if (const Ops* o = avx2_ops()) return o;
#endif
    if (const Ops* o = neon_ops()) return o;
    return &scalar_ops();
}

const Ops*& active() {
    static const Ops* ops = detect();
    return ops;
}

} // namespace

const Ops& ops() { return *active(); }

bool force_backend(const std::string& name) {
    if (name == "scalar") {
        active() = &scalar_ops();
        return true;
    }
    if (name == "auto") {
        active() = detect();
        return true;
    }
    if (name == "avx2") {
#if defined(__x86_64__) || defined(_M_X64)
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            if (const Ops* o = avx2_ops()) {
                active() = o;
                return true;
            }
        }
#endif
        return false;
    }
    if (name == "neon") {
        if (const Ops* o = neon_ops()) {
            active() = o;
            return true;
        }
        return false;
    }
    return false;
}

} // namespace mcor::simd
