#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ardn/tensor.hpp"

namespace ardn {

// Central-difference gradient of a scalar-valued function of a Tensor4.
// Used as the independent oracle for every analytic backward pass.
template <class T, class F>
Tensor4<T> finite_diff_grad(F&& f, Tensor4<T> x, T eps) {
    if (!(eps > T(0))) throw std::invalid_argument("finite_diff_grad: eps must be > 0");
    Tensor4<T> grad = zeros_like(x);
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const T saved = x.data[i];
        x.data[i] = saved + eps;
        const T fp = f(static_cast<const Tensor4<T>&>(x));
        x.data[i] = saved - eps;
        const T fm = f(static_cast<const Tensor4<T>&>(x));
        x.data[i] = saved;
        if (!std::isfinite(double(fp)) || !std::isfinite(double(fm)))
            throw std::runtime_error("finite_diff_grad: non-finite function evaluation");
        grad.data[i] = (fp - fm) / (T(2) * eps);
    }
    return grad;
}

// Relative error with an absolute floor so near-zero pairs do not blow up.
template <class T>
double rel_error(T analytic, T numeric, double floor = 1e-6) {
    const double a = double(analytic), n = double(numeric);
    const double scale = std::max({std::abs(a), std::abs(n), floor});
    return std::abs(a - n) / scale;
}

template <class T>
double max_rel_error(const Tensor4<T>& analytic, const Tensor4<T>& numeric,
                     double floor = 1e-6) {
    require_same_dims(analytic, numeric, "max_rel_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.data.size(); ++i)
        worst = std::max(worst, rel_error(analytic.data[i], numeric.data[i], floor));
    return worst;
}

}  // namespace ardn
