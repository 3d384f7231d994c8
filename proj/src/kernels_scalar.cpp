#include "ardn/kernels.hpp"

#include <cmath>
#include <vector>

// Reference kernels. The AVX2 variants in kernels_avx2.cpp replicate these
// loop bodies op for op; any change here must be mirrored there or the
// bitwise-equivalence tests will fail.

namespace ardn::kernels::scalar {

template <class T>
void conv3x3_forward_padded(const T* pin, int in_c, int h, int w, const T* weights,
                            const T* bias, int out_c, T* out) {
    const std::size_t pw = std::size_t(w) + 2;
    const std::size_t pplane = std::size_t(h + 2) * pw;
    const std::size_t oplane = std::size_t(h) * w;
    std::vector<T> acc(std::size_t(w));
    for (int oc = 0; oc < out_c; ++oc) {
        const T* wk_oc = weights + std::size_t(oc) * in_c * 9;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) acc[x] = bias[oc];
            for (int ic = 0; ic < in_c; ++ic) {
                const T* wk = wk_oc + std::size_t(ic) * 9;
                const T* rows = pin + std::size_t(ic) * pplane + std::size_t(y) * pw;
                for (int ky = 0; ky < 3; ++ky) {
                    const T* r = rows + std::size_t(ky) * pw;
                    const T w0 = wk[ky * 3 + 0];
                    const T w1 = wk[ky * 3 + 1];
                    const T w2 = wk[ky * 3 + 2];
                    for (int x = 0; x < w; ++x)
                        acc[x] += w0 * r[x] + w1 * r[x + 1] + w2 * r[x + 2];
                }
            }
            T* orow = out + std::size_t(oc) * oplane + std::size_t(y) * w;
            for (int x = 0; x < w; ++x) orow[x] = acc[x];
        }
    }
}

template <class T>
void relu_forward(const T* x, T* y, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <class T>
void relu_backward(const T* gout, const T* x, T* gin, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) gin[i] = x[i] > T(0) ? gout[i] : T(0);
}

template <class T>
void weighted_depth_sum(const T* a, const T* r, int k, std::size_t plane, T* e) {
    for (std::size_t p = 0; p < plane; ++p) e[p] = T(0);
    for (int i = 0; i < k; ++i) {
        const T* ai = a + std::size_t(i) * plane;
        const T* ri = r + std::size_t(i) * plane;
        for (std::size_t p = 0; p < plane; ++p) e[p] += ai[p] * ri[p];
    }
}

template <class T>
void weighted_depth_sum_backward(const T* ge, const T* a, const T* r, int k,
                                 std::size_t plane, T* ga, T* gr) {
    for (int i = 0; i < k; ++i) {
        const T* ai = a + std::size_t(i) * plane;
        const T* ri = r + std::size_t(i) * plane;
        T* gai = ga + std::size_t(i) * plane;
        T* gri = gr + std::size_t(i) * plane;
        for (std::size_t p = 0; p < plane; ++p) {
            gai[p] = ge[p] * ri[p];
            gri[p] = ge[p] * ai[p];
        }
    }
}

template <class T>
void adam_update(T* p, const T* g, T* m, T* v, std::size_t count, T lr, T beta1, T beta2,
                 T eps, T inv_bc1, T inv_bc2) {
    const T om1 = T(1) - beta1;
    const T om2 = T(1) - beta2;
    for (std::size_t i = 0; i < count; ++i) {
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

}  // namespace ardn::kernels::scalar
