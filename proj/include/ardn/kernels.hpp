#pragma once

#include <cstddef>

// Arithmetic inner loops. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant selected at runtime. The two are bitwise
// equivalent by construction: per-output-element accumulation order is
// identical, kernel translation units are built with -ffp-contract=off, and
// only IEEE-exact vector ops (add/mul/div/sqrt/compare) are used. Reductions
// that merge many elements into few (bias and weight gradients, losses,
// batch-norm statistics) are deliberately not vectorized so their summation
// order never depends on the ISA.

namespace ardn::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Compiled in and reported by the CPU.
bool avx2_supported();

// avx2 when supported unless ARDN_FORCE_SCALAR=1; decided once per process.
Isa active_isa();

#define ARDN_DECLARE_KERNELS                                                           \
    /* 3x3 correlation over a zero-padded image. pin is (in_c, h+2, w+2); out is       \
       (out_c, h, w); weights (out_c, in_c, 3, 3) row-major; per output element the    \
       accumulation order is bias, then ic-major, ky, with the three kx taps summed    \
       as (w0*r0 + w1*r1) + w2*r2. */                                                  \
    template <class T>                                                                 \
    void conv3x3_forward_padded(const T* pin, int in_c, int h, int w, const T* weights,\
                                const T* bias, int out_c, T* out);                     \
    template <class T>                                                                 \
    void relu_forward(const T* x, T* y, std::size_t count);                            \
    template <class T>                                                                 \
    void relu_backward(const T* gout, const T* x, T* gin, std::size_t count);          \
    /* e[p] = sum_i a[i*plane+p] * r[i*plane+p], one batch item at a time */           \
    template <class T>                                                                 \
    void weighted_depth_sum(const T* a, const T* r, int k, std::size_t plane, T* e);   \
    /* ga = ge*r, gr = ge*a, broadcast of ge over the depth axis */                    \
    template <class T>                                                                 \
    void weighted_depth_sum_backward(const T* ge, const T* a, const T* r, int k,       \
                                     std::size_t plane, T* ga, T* gr);                 \
    /* bias-corrected Adam; inv_bc1/inv_bc2 are 1/(1-beta^t) precomputed */            \
    template <class T>                                                                 \
    void adam_update(T* p, const T* g, T* m, T* v, std::size_t count, T lr, T beta1,   \
                     T beta2, T eps, T inv_bc1, T inv_bc2);

namespace scalar {
ARDN_DECLARE_KERNELS
}
namespace avx2 {
ARDN_DECLARE_KERNELS
}

#undef ARDN_DECLARE_KERNELS

// Dispatching front ends.

template <class T>
inline void conv3x3_forward_padded(const T* pin, int in_c, int h, int w, const T* weights,
                                   const T* bias, int out_c, T* out) {
    if (active_isa() == Isa::avx2)
        avx2::conv3x3_forward_padded(pin, in_c, h, w, weights, bias, out_c, out);
    else
        scalar::conv3x3_forward_padded(pin, in_c, h, w, weights, bias, out_c, out);
}

template <class T>
inline void relu_forward(const T* x, T* y, std::size_t count) {
    if (active_isa() == Isa::avx2)
        avx2::relu_forward(x, y, count);
    else
        scalar::relu_forward(x, y, count);
}

template <class T>
inline void relu_backward(const T* gout, const T* x, T* gin, std::size_t count) {
    if (active_isa() == Isa::avx2)
        avx2::relu_backward(gout, x, gin, count);
    else
        scalar::relu_backward(gout, x, gin, count);
}

template <class T>
inline void weighted_depth_sum(const T* a, const T* r, int k, std::size_t plane, T* e) {
    if (active_isa() == Isa::avx2)
        avx2::weighted_depth_sum(a, r, k, plane, e);
    else
        scalar::weighted_depth_sum(a, r, k, plane, e);
}

template <class T>
inline void weighted_depth_sum_backward(const T* ge, const T* a, const T* r, int k,
                                        std::size_t plane, T* ga, T* gr) {
    if (active_isa() == Isa::avx2)
        avx2::weighted_depth_sum_backward(ge, a, r, k, plane, ga, gr);
    else
        scalar::weighted_depth_sum_backward(ge, a, r, k, plane, ga, gr);
}

template <class T>
inline void adam_update(T* p, const T* g, T* m, T* v, std::size_t count, T lr, T beta1,
                        T beta2, T eps, T inv_bc1, T inv_bc2) {
    if (active_isa() == Isa::avx2)
        avx2::adam_update(p, g, m, v, count, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
    else
        scalar::adam_update(p, g, m, v, count, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
}

}  // namespace ardn::kernels
