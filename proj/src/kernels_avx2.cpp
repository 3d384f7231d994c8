#include "ardn/kernels.hpp"

#include <cmath>
#include <vector>

// AVX2 variants. Vectorization runs across output elements only; the
// per-element operation sequence matches kernels_scalar.cpp exactly, so with
// contraction disabled the results are bitwise identical to the scalar path.
// This file is compiled with -mavx2 on x86-64 and reduced to stubs elsewhere.

#if defined(__AVX2__)

#include <immintrin.h>

namespace ardn::kernels::avx2 {

namespace {

template <class T>
struct Vec;

template <>
struct Vec<float> {
    using reg = __m256;
    static constexpr int width = 8;
    static reg load(const float* p) { return _mm256_loadu_ps(p); }
    static void store(float* p, reg v) { _mm256_storeu_ps(p, v); }
    static reg set1(float v) { return _mm256_set1_ps(v); }
    static reg add(reg a, reg b) { return _mm256_add_ps(a, b); }
    static reg sub(reg a, reg b) { return _mm256_sub_ps(a, b); }
    static reg mul(reg a, reg b) { return _mm256_mul_ps(a, b); }
    static reg div(reg a, reg b) { return _mm256_div_ps(a, b); }
    static reg sqrt(reg a) { return _mm256_sqrt_ps(a); }
    static reg gt_zero_mask(reg a) {
        return _mm256_cmp_ps(a, _mm256_setzero_ps(), _CMP_GT_OQ);
    }
    static reg mask_and(reg mask, reg v) { return _mm256_and_ps(mask, v); }
};

template <>
struct Vec<double> {
    using reg = __m256d;
    static constexpr int width = 4;
    static reg load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, reg v) { _mm256_storeu_pd(p, v); }
    static reg set1(double v) { return _mm256_set1_pd(v); }
    static reg add(reg a, reg b) { return _mm256_add_pd(a, b); }
    static reg sub(reg a, reg b) { return _mm256_sub_pd(a, b); }
    static reg mul(reg a, reg b) { return _mm256_mul_pd(a, b); }
    static reg div(reg a, reg b) { return _mm256_div_pd(a, b); }
    static reg sqrt(reg a) { return _mm256_sqrt_pd(a); }
    static reg gt_zero_mask(reg a) {
        return _mm256_cmp_pd(a, _mm256_setzero_pd(), _CMP_GT_OQ);
    }
    static reg mask_and(reg mask, reg v) { return _mm256_and_pd(mask, v); }
};

}  // namespace

template <class T>
void conv3x3_forward_padded(const T* pin, int in_c, int h, int w, const T* weights,
                            const T* bias, int out_c, T* out) {
    using V = Vec<T>;
    constexpr int W = V::width;
    const std::size_t pw = std::size_t(w) + 2;
    const std::size_t pplane = std::size_t(h + 2) * pw;
    const std::size_t oplane = std::size_t(h) * w;
    const int wv = w - w % W;  // vectorized column count
    for (int oc = 0; oc < out_c; ++oc) {
        const T* wk_oc = weights + std::size_t(oc) * in_c * 9;
        const T b = bias[oc];
        for (int y = 0; y < h; ++y) {
            const T* rows0 = pin + std::size_t(y) * pw;
            T* orow = out + std::size_t(oc) * oplane + std::size_t(y) * w;
            for (int x = 0; x < wv; x += W) {
                typename V::reg acc = V::set1(b);
                for (int ic = 0; ic < in_c; ++ic) {
                    const T* wk = wk_oc + std::size_t(ic) * 9;
                    const T* rows = rows0 + std::size_t(ic) * pplane;
                    for (int ky = 0; ky < 3; ++ky) {
                        const T* r = rows + std::size_t(ky) * pw + x;
                        const typename V::reg w0 = V::set1(wk[ky * 3 + 0]);
                        const typename V::reg w1 = V::set1(wk[ky * 3 + 1]);
                        const typename V::reg w2 = V::set1(wk[ky * 3 + 2]);
                        // same association as scalar: (w0*r0 + w1*r1) + w2*r2
                        acc = V::add(acc, V::add(V::add(V::mul(w0, V::load(r)),
                                                        V::mul(w1, V::load(r + 1))),
                                                 V::mul(w2, V::load(r + 2))));
                    }
                }
                V::store(orow + x, acc);
            }
            for (int x = wv; x < w; ++x) {
                T acc = b;
                for (int ic = 0; ic < in_c; ++ic) {
                    const T* wk = wk_oc + std::size_t(ic) * 9;
                    const T* rows = rows0 + std::size_t(ic) * pplane;
                    for (int ky = 0; ky < 3; ++ky) {
                        const T* r = rows + std::size_t(ky) * pw;
                        acc += wk[ky * 3 + 0] * r[x] + wk[ky * 3 + 1] * r[x + 1] +
                               wk[ky * 3 + 2] * r[x + 2];
                    }
                }
                orow[x] = acc;
            }
        }
    }
}

template <class T>
void relu_forward(const T* x, T* y, std::size_t count) {
    using V = Vec<T>;
    constexpr int W = V::width;
    std::size_t i = 0;
    for (; i + W <= count; i += W) {
        const typename V::reg v = V::load(x + i);
        V::store(y + i, V::mask_and(V::gt_zero_mask(v), v));
    }
    for (; i < count; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <class T>
void relu_backward(const T* gout, const T* x, T* gin, std::size_t count) {
    using V = Vec<T>;
    constexpr int W = V::width;
    std::size_t i = 0;
    for (; i + W <= count; i += W) {
        const typename V::reg mask = V::gt_zero_mask(V::load(x + i));
        V::store(gin + i, V::mask_and(mask, V::load(gout + i)));
    }
    for (; i < count; ++i) gin[i] = x[i] > T(0) ? gout[i] : T(0);
}

template <class T>
void weighted_depth_sum(const T* a, const T* r, int k, std::size_t plane, T* e) {
    using V = Vec<T>;
    constexpr int W = V::width;
    const std::size_t pv = plane - plane % W;
    for (std::size_t p = 0; p < pv; p += W) V::store(e + p, V::set1(T(0)));
    for (std::size_t p = pv; p < plane; ++p) e[p] = T(0);
    for (int i = 0; i < k; ++i) {
        const T* ai = a + std::size_t(i) * plane;
        const T* ri = r + std::size_t(i) * plane;
        for (std::size_t p = 0; p < pv; p += W)
            V::store(e + p, V::add(V::load(e + p), V::mul(V::load(ai + p), V::load(ri + p))));
        for (std::size_t p = pv; p < plane; ++p) e[p] += ai[p] * ri[p];
    }
}

template <class T>
void weighted_depth_sum_backward(const T* ge, const T* a, const T* r, int k,
                                 std::size_t plane, T* ga, T* gr) {
    using V = Vec<T>;
    constexpr int W = V::width;
    const std::size_t pv = plane - plane % W;
    for (int i = 0; i < k; ++i) {
        const T* ai = a + std::size_t(i) * plane;
        const T* ri = r + std::size_t(i) * plane;
        T* gai = ga + std::size_t(i) * plane;
        T* gri = gr + std::size_t(i) * plane;
        for (std::size_t p = 0; p < pv; p += W) {
            const typename V::reg g = V::load(ge + p);
            V::store(gai + p, V::mul(g, V::load(ri + p)));
            V::store(gri + p, V::mul(g, V::load(ai + p)));
        }
        for (std::size_t p = pv; p < plane; ++p) {
            gai[p] = ge[p] * ri[p];
            gri[p] = ge[p] * ai[p];
        }
    }
}

template <class T>
void adam_update(T* p, const T* g, T* m, T* v, std::size_t count, T lr, T beta1, T beta2,
                 T eps, T inv_bc1, T inv_bc2) {
    using V = Vec<T>;
    constexpr int W = V::width;
    const T om1 = T(1) - beta1;
    const T om2 = T(1) - beta2;
    const typename V::reg vb1 = V::set1(beta1), vb2 = V::set1(beta2);
    const typename V::reg vo1 = V::set1(om1), vo2 = V::set1(om2);
    const typename V::reg vbc1 = V::set1(inv_bc1), vbc2 = V::set1(inv_bc2);
    const typename V::reg vlr = V::set1(lr), veps = V::set1(eps);
    std::size_t i = 0;
    for (; i + W <= count; i += W) {
        const typename V::reg gi = V::load(g + i);
        const typename V::reg mi = V::add(V::mul(vb1, V::load(m + i)), V::mul(vo1, gi));
        const typename V::reg vi =
            V::add(V::mul(vb2, V::load(v + i)), V::mul(vo2, V::mul(gi, gi)));
        V::store(m + i, mi);
        V::store(v + i, vi);
        const typename V::reg mhat = V::mul(mi, vbc1);
        const typename V::reg vhat = V::mul(vi, vbc2);
        const typename V::reg upd = V::div(V::mul(vlr, mhat), V::add(V::sqrt(vhat), veps));
        V::store(p + i, V::sub(V::load(p + i), upd));
    }
    for (; i < count; ++i) {
        const T gi = g[i];
        m[i] = beta1 * m[i] + om1 * gi;
        v[i] = beta2 * v[i] + om2 * (gi * gi);
        const T mhat = m[i] * inv_bc1;
        const T vhat = v[i] * inv_bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

template void conv3x3_forward_padded<float>(const float*, int, int, int, const float*,
                                            const float*, int, float*);
template void conv3x3_forward_padded<double>(const double*, int, int, int, const double*,
                                             const double*, int, double*);
template void relu_forward<float>(const float*, float*, std::size_t);
template void relu_forward<double>(const double*, double*, std::size_t);
template void relu_backward<float>(const float*, const float*, float*, std::size_t);
template void relu_backward<double>(const double*, const double*, double*, std::size_t);
template void weighted_depth_sum<float>(const float*, const float*, int, std::size_t, float*);
template void weighted_depth_sum<double>(const double*, const double*, int, std::size_t,
                                         double*);
template void weighted_depth_sum_backward<float>(const float*, const float*, const float*,
                                                 int, std::size_t, float*, float*);
template void weighted_depth_sum_backward<double>(const double*, const double*,
                                                  const double*, int, std::size_t, double*,
                                                  double*);
template void adam_update<float>(float*, const float*, float*, float*, std::size_t, float,
                                 float, float, float, float, float);
template void adam_update<double>(double*, const double*, double*, double*, std::size_t,
                                  double, double, double, double, double, double);

}  // namespace ardn::kernels::avx2

#else  // !__AVX2__

#include <stdexcept>

// Non-AVX2 build: the dispatcher never selects these, but the symbols must exist.
namespace ardn::kernels::avx2 {

namespace {
[[noreturn]] void unavailable() {
    throw std::logic_error("avx2 kernels not compiled into this binary");
}
}  // namespace

template <class T>
void conv3x3_forward_padded(const T*, int, int, int, const T*, const T*, int, T*) {
    unavailable();
}
template <class T>
void relu_forward(const T*, T*, std::size_t) {
    unavailable();
}
template <class T>
void relu_backward(const T*, const T*, T*, std::size_t) {
    unavailable();
}
template <class T>
void weighted_depth_sum(const T*, const T*, int, std::size_t, T*) {
    unavailable();
}
template <class T>
void weighted_depth_sum_backward(const T*, const T*, const T*, int, std::size_t, T*, T*) {
    unavailable();
}
template <class T>
void adam_update(T*, const T*, T*, T*, std::size_t, T, T, T, T, T, T) {
    unavailable();
}

template void conv3x3_forward_padded<float>(const float*, int, int, int, const float*,
                                            const float*, int, float*);
template void conv3x3_forward_padded<double>(const double*, int, int, int, const double*,
                                             const double*, int, double*);
template void relu_forward<float>(const float*, float*, std::size_t);
template void relu_forward<double>(const double*, double*, std::size_t);
template void relu_backward<float>(const float*, const float*, float*, std::size_t);
template void relu_backward<double>(const double*, const double*, double*, std::size_t);
template void weighted_depth_sum<float>(const float*, const float*, int, std::size_t, float*);
template void weighted_depth_sum<double>(const double*, const double*, int, std::size_t,
                                         double*);
template void weighted_depth_sum_backward<float>(const float*, const float*, const float*,
                                                 int, std::size_t, float*, float*);
template void weighted_depth_sum_backward<double>(const double*, const double*,
                                                  const double*, int, std::size_t, double*,
                                                  double*);
template void adam_update<float>(float*, const float*, float*, float*, std::size_t, float,
                                 float, float, float, float, float);
template void adam_update<double>(double*, const double*, double*, double*, std::size_t,
                                  double, double, double, double, double, double);

}  // namespace ardn::kernels::avx2

#endif
