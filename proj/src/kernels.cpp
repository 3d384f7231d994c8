#include "ardn/kernels.hpp"

#include <cstdlib>

namespace ardn::kernels {

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* force = std::getenv("ARDN_FORCE_SCALAR");
        if (force && force[0] == '1') return Isa::scalar;
        return avx2_supported() ? Isa::avx2 : Isa::scalar;
    }();
    return isa;
}

}  // namespace ardn::kernels
