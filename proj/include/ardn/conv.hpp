#pragma once

#include <cstring>
#include <stdexcept>
#include <vector>

#include "ardn/kernels.hpp"
#include "ardn/parallel.hpp"
#include "ardn/tensor.hpp"

namespace ardn {

// 3x3 convolution parameters. This project supports exactly one convolution
// geometry: 3x3 kernels, stride 1, one pixel of zero padding on each side.
template <class T>
struct ConvParams {
    Tensor4<T> weights;   // (out_channels, in_channels, 3, 3)
    std::vector<T> bias;  // out_channels

    int in_channels() const { return weights.c; }
    int out_channels() const { return weights.n; }

    void validate() const {
        if (weights.h != 3 || weights.w != 3)
            throw std::invalid_argument("ConvParams: kernel spatial size must be 3x3");
        if (int(bias.size()) != weights.n)
            throw std::invalid_argument("ConvParams: bias length must equal out_channels");
    }
};

// Copies the channel planes of one batch item into a (c, h+2, w+2) buffer with
// a zero border.
template <class T>
void zero_pad_item(const T* src, int c, int h, int w, T* dst) {
    const std::size_t pw = std::size_t(w) + 2;
    const std::size_t pplane = std::size_t(h + 2) * pw;
    std::memset(dst, 0, sizeof(T) * pplane * c);
    for (int ch = 0; ch < c; ++ch)
        for (int y = 0; y < h; ++y)
            std::memcpy(dst + std::size_t(ch) * pplane + std::size_t(y + 1) * pw + 1,
                        src + (std::size_t(ch) * h + y) * w, sizeof(T) * w);
}

template <class T>
Tensor4<T> conv2d_forward(const Tensor4<T>& input, const ConvParams<T>& params) {
    params.validate();
    if (input.c != params.in_channels())
        throw std::invalid_argument("conv2d_forward: input has " + std::to_string(input.c) +
                                    " channels, weights expect " +
                                    std::to_string(params.in_channels()));
    require_finite(input, "conv2d_forward input");

    const int h = input.h, w = input.w;
    Tensor4<T> out(input.n, params.out_channels(), h, w);
    const std::size_t pplane = std::size_t(h + 2) * (w + 2);
    parallel_for(std::size_t(input.n), [&](std::size_t b) {
        std::vector<T> padded(pplane * input.c);
        zero_pad_item(input.data.data() + b * input.c * input.plane(), input.c, h, w,
                      padded.data());
        kernels::conv3x3_forward_padded(padded.data(), input.c, h, w,
                                        params.weights.data.data(), params.bias.data(),
                                        params.out_channels(),
                                        out.data.data() + b * out.c * out.plane());
    });
    return out;
}

template <class T>
struct ConvGrads {
    Tensor4<T> input;
    Tensor4<T> weights;
    std::vector<T> bias;
};

// Gradients of sum(grad_out * conv2d_forward(input, params)) with respect to
// input, weights and bias. The input gradient is itself a 3x3 zero-padded
// correlation (with spatially flipped, channel-transposed weights) and reuses
// the forward kernel; weight and bias gradients are reductions and accumulate
// in fixed (b, y, x) order on the scalar path only.
template <class T>
ConvGrads<T> conv2d_backward(const Tensor4<T>& grad_out, const Tensor4<T>& input,
                             const ConvParams<T>& params) {
    params.validate();
    if (input.c != params.in_channels())
        throw std::invalid_argument("conv2d_backward: input channel mismatch");
    if (grad_out.n != input.n || grad_out.c != params.out_channels() ||
        grad_out.h != input.h || grad_out.w != input.w)
        throw std::invalid_argument("conv2d_backward: grad_out dims " + grad_out.dims_str() +
                                    " do not match forward output");

    const int h = input.h, w = input.w;
    const int ic_n = params.in_channels(), oc_n = params.out_channels();

    ConvGrads<T> g;
    g.input = Tensor4<T>(input.n, ic_n, h, w);
    g.weights = Tensor4<T>(oc_n, ic_n, 3, 3);
    g.bias.assign(std::size_t(oc_n), T(0));

    // flipped and transposed weights: wt[i][o][ky][kx] = w[o][i][2-ky][2-kx]
    Tensor4<T> wt(ic_n, oc_n, 3, 3);
    for (int oc = 0; oc < oc_n; ++oc)
        for (int ic = 0; ic < ic_n; ++ic)
            for (int ky = 0; ky < 3; ++ky)
                for (int kx = 0; kx < 3; ++kx)
                    wt.at(ic, oc, ky, kx) = params.weights.at(oc, ic, 2 - ky, 2 - kx);

    const std::vector<T> zero_bias(std::size_t(ic_n), T(0));
    const std::size_t gp_plane = std::size_t(h + 2) * (w + 2);
    parallel_for(std::size_t(input.n), [&](std::size_t b) {
        std::vector<T> padded(gp_plane * oc_n);
        zero_pad_item(grad_out.data.data() + b * oc_n * grad_out.plane(), oc_n, h, w,
                      padded.data());
        kernels::conv3x3_forward_padded(padded.data(), oc_n, h, w, wt.data.data(),
                                        zero_bias.data(), ic_n,
                                        g.input.data.data() + b * ic_n * g.input.plane());
    });

    // weight/bias reductions, serial over the batch
    const std::size_t pw = std::size_t(w) + 2;
    const std::size_t pplane = std::size_t(h + 2) * pw;
    std::vector<T> pin(pplane * ic_n);
    for (int b = 0; b < input.n; ++b) {
        zero_pad_item(input.data.data() + std::size_t(b) * ic_n * input.plane(), ic_n, h, w,
                      pin.data());
        for (int oc = 0; oc < oc_n; ++oc) {
            const T* go_plane = grad_out.data.data() +
                                (std::size_t(b) * oc_n + oc) * grad_out.plane();
            T* gw_oc = g.weights.data.data() + std::size_t(oc) * ic_n * 9;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const T go = go_plane[std::size_t(y) * w + x];
                    g.bias[oc] += go;
                    for (int ic = 0; ic < ic_n; ++ic) {
                        const T* rows = pin.data() + std::size_t(ic) * pplane +
                                        std::size_t(y) * pw + x;
                        T* gw = gw_oc + std::size_t(ic) * 9;
                        for (int ky = 0; ky < 3; ++ky) {
                            const T* r = rows + std::size_t(ky) * pw;
                            gw[ky * 3 + 0] += go * r[0];
                            gw[ky * 3 + 1] += go * r[1];
                            gw[ky * 3 + 2] += go * r[2];
                        }
                    }
                }
            }
        }
    }
    return g;
}

}  // namespace ardn
