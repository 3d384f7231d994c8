#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ardn {

// Dense 4-D array in row-major (n, c, h, w) order: n varies slowest, w fastest.
// This is the one layout used everywhere; convolutions, per-depth softmax and
// the checkpoint format all assume it.
template <class T>
struct Tensor4 {
    int n = 0, c = 0, h = 0, w = 0;
    std::vector<T> data;

    Tensor4() = default;

    Tensor4(int n_, int c_, int h_, int w_, T fill = T(0)) : n(n_), c(c_), h(h_), w(w_) {
        if (n < 1 || c < 1 || h < 1 || w < 1)
            throw std::invalid_argument("Tensor4: all dims must be >= 1");
        data.assign(size(), fill);
    }

    std::size_t size() const { return std::size_t(n) * c * h * w; }
    std::size_t plane() const { return std::size_t(h) * w; }

    std::size_t index(int b, int ch, int y, int x) const {
        return ((std::size_t(b) * c + ch) * h + y) * w + x;
    }
    T& at(int b, int ch, int y, int x) { return data[index(b, ch, y, x)]; }
    const T& at(int b, int ch, int y, int x) const { return data[index(b, ch, y, x)]; }

    bool same_dims(const Tensor4& o) const {
        return n == o.n && c == o.c && h == o.h && w == o.w;
    }

    std::string dims_str() const {
        return "(" + std::to_string(n) + "," + std::to_string(c) + "," +
               std::to_string(h) + "," + std::to_string(w) + ")";
    }
};

using Tensor4f = Tensor4<float>;
using Tensor4d = Tensor4<double>;

template <class T>
Tensor4<T> zeros_like(const Tensor4<T>& t) {
    return Tensor4<T>(t.n, t.c, t.h, t.w);
}

template <class T>
bool all_finite(const Tensor4<T>& t) {
    for (const T& v : t.data)
        if (!std::isfinite(double(v))) return false;
    return true;
}

template <class T>
void require_finite(const Tensor4<T>& t, const char* what) {
    if (!all_finite(t))
        throw std::invalid_argument(std::string(what) + ": non-finite values");
}

template <class T>
void require_same_dims(const Tensor4<T>& a, const Tensor4<T>& b, const char* what) {
    if (!a.same_dims(b))
        throw std::invalid_argument(std::string(what) + ": dim mismatch " + a.dims_str() +
                                    " vs " + b.dims_str());
}

// Channel slice [c0, c1) as a new tensor.
template <class T>
Tensor4<T> slice_channels(const Tensor4<T>& t, int c0, int c1) {
    if (c0 < 0 || c1 > t.c || c0 >= c1)
        throw std::invalid_argument("slice_channels: bad range");
    Tensor4<T> out(t.n, c1 - c0, t.h, t.w);
    const std::size_t plane = t.plane();
    for (int b = 0; b < t.n; ++b)
        for (int ch = c0; ch < c1; ++ch) {
            const T* src = t.data.data() + (std::size_t(b) * t.c + ch) * plane;
            T* dst = out.data.data() + (std::size_t(b) * out.c + (ch - c0)) * plane;
            for (std::size_t i = 0; i < plane; ++i) dst[i] = src[i];
        }
    return out;
}

// Copy channel src_ch of src into channel dst_ch of dst (same n, h, w).
template <class T>
void copy_channel(const Tensor4<T>& src, int src_ch, Tensor4<T>& dst, int dst_ch) {
    if (src.n != dst.n || src.h != dst.h || src.w != dst.w)
        throw std::invalid_argument("copy_channel: spatial/batch mismatch");
    const std::size_t plane = src.plane();
    for (int b = 0; b < src.n; ++b) {
        const T* s = src.data.data() + (std::size_t(b) * src.c + src_ch) * plane;
        T* d = dst.data.data() + (std::size_t(b) * dst.c + dst_ch) * plane;
        for (std::size_t i = 0; i < plane; ++i) d[i] = s[i];
    }
}

}  // namespace ardn
