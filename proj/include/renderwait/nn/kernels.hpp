// Copyright 2026 The renderwait Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Forward/backward kernels for the layer types the classifier uses. All
// convolutions are NCHW, 3x3 kernels use padding 1.

#include <algorithm>
#include <cmath>

#include "renderwait/nn/tensor.hpp"

namespace renderwait::nn {

inline std::size_t conv_out_extent(std::size_t in, int stride) {
  return (in - 1) / static_cast<std::size_t>(stride) + 1;
}

namespace detail {

// Valid output index range [lo, hi] for kernel tap k (0..2) along one axis.
inline void tap_range(int k, int stride, int in, int out, int& lo, int& hi) {
  lo = k >= 1 ? 0 : (1 - k + stride - 1) / stride;
  hi = in - k < 0 ? -1 : std::min(out - 1, (in - k) / stride);
}

// out += conv3x3(in, kernel), single plane.
template <typename T>
void plane_conv3x3(const T* in, int h, int w, const T* kernel, int stride, T* out, int oh,
                   int ow) {
  for (int ky = 0; ky < 3; ++ky) {
    int ylo, yhi;
    tap_range(ky, stride, h, oh, ylo, yhi);
    for (int kx = 0; kx < 3; ++kx) {
      int xlo, xhi;
      tap_range(kx, stride, w, ow, xlo, xhi);
      const T k = kernel[ky * 3 + kx];
      if (k == T{0}) continue;
      for (int oy = ylo; oy <= yhi; ++oy) {
        const T* row = in + static_cast<std::ptrdiff_t>(oy * stride + ky - 1) * w + (kx - 1);
        T* o = out + static_cast<std::ptrdiff_t>(oy) * ow;
        if (stride == 1) {
          for (int ox = xlo; ox <= xhi; ++ox) o[ox] += k * row[ox];
        } else {
          for (int ox = xlo; ox <= xhi; ++ox) o[ox] += k * row[ox * stride];
        }
      }
    }
  }
}

// din += conv3x3^T(dout), dkernel += correlation(in, dout), single plane.
template <typename T>
void plane_conv3x3_backward(const T* in, int h, int w, const T* kernel, int stride, const T* dout,
                            int oh, int ow, T* din, T* dkernel) {
  for (int ky = 0; ky < 3; ++ky) {
    int ylo, yhi;
    tap_range(ky, stride, h, oh, ylo, yhi);
    for (int kx = 0; kx < 3; ++kx) {
      int xlo, xhi;
      tap_range(kx, stride, w, ow, xlo, xhi);
      const T k = kernel[ky * 3 + kx];
      T acc{0};
      for (int oy = ylo; oy <= yhi; ++oy) {
        const std::ptrdiff_t irow = static_cast<std::ptrdiff_t>(oy * stride + ky - 1) * w + (kx - 1);
        const T* d = dout + static_cast<std::ptrdiff_t>(oy) * ow;
        for (int ox = xlo; ox <= xhi; ++ox) {
          const std::ptrdiff_t idx = irow + static_cast<std::ptrdiff_t>(ox) * stride;
          acc += d[ox] * in[idx];
          if (din) din[idx] += k * d[ox];
        }
      }
      dkernel[ky * 3 + kx] += acc;
    }
  }
}

}  // namespace detail

// x [N,C,H,W], w [C,1,3,3] -> [N,C,ceil(H/s),ceil(W/s)]
template <typename T>
BasicTensor<T> depthwise_conv3x3(const BasicTensor<T>& x, const BasicTensor<T>& w, int stride) {
  if (x.rank() != 4) throw std::invalid_argument("depthwise_conv3x3: input must be NCHW");
  if (stride != 1 && stride != 2) throw std::invalid_argument("depthwise_conv3x3: stride must be 1 or 2");
  const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), wd = x.dim(3);
  require_shape(w.shape(), {c, 1, 3, 3}, "depthwise_conv3x3 weights");
  const std::size_t oh = conv_out_extent(h, stride), ow = conv_out_extent(wd, stride);
  BasicTensor<T> y({n, c, oh, ow});
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      detail::plane_conv3x3(x.raw() + (b * c + ch) * h * wd, static_cast<int>(h),
                            static_cast<int>(wd), w.raw() + ch * 9, stride,
                            y.raw() + (b * c + ch) * oh * ow, static_cast<int>(oh),
                            static_cast<int>(ow));
    }
  }
  return y;
}

template <typename T>
void depthwise_conv3x3_backward(const BasicTensor<T>& x, const BasicTensor<T>& w, int stride,
                                const BasicTensor<T>& dy, BasicTensor<T>* dx, BasicTensor<T>& dw) {
  const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::size_t oh = conv_out_extent(h, stride), ow = conv_out_extent(wd, stride);
  require_shape(dy.shape(), {n, c, oh, ow}, "depthwise_conv3x3 output gradient");
  if (dx) require_shape(dx->shape(), x.shape(), "depthwise_conv3x3 input gradient");
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      detail::plane_conv3x3_backward(
          x.raw() + (b * c + ch) * h * wd, static_cast<int>(h), static_cast<int>(wd),
          w.raw() + ch * 9, stride, dy.raw() + (b * c + ch) * oh * ow, static_cast<int>(oh),
          static_cast<int>(ow), dx ? dx->raw() + (b * c + ch) * h * wd : nullptr, dw.raw() + ch * 9);
    }
  }
}

// Dense 3x3 convolution, x [N,Cin,H,W], w [Cout,Cin,3,3].
template <typename T>
BasicTensor<T> conv3x3(const BasicTensor<T>& x, const BasicTensor<T>& w, int stride) {
  if (x.rank() != 4 || w.rank() != 4) throw std::invalid_argument("conv3x3: expected NCHW tensors");
  if (stride != 1 && stride != 2) throw std::invalid_argument("conv3x3: stride must be 1 or 2");
  const std::size_t n = x.dim(0), ci = x.dim(1), h = x.dim(2), wd = x.dim(3), co = w.dim(0);
  require_shape(w.shape(), {co, ci, 3, 3}, "conv3x3 weights");
  const std::size_t oh = conv_out_extent(h, stride), ow = conv_out_extent(wd, stride);
  BasicTensor<T> y({n, co, oh, ow});
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < co; ++o) {
      for (std::size_t i = 0; i < ci; ++i) {
        detail::plane_conv3x3(x.raw() + (b * ci + i) * h * wd, static_cast<int>(h),
                              static_cast<int>(wd), w.raw() + (o * ci + i) * 9, stride,
                              y.raw() + (b * co + o) * oh * ow, static_cast<int>(oh),
                              static_cast<int>(ow));
      }
    }
  }
  return y;
}

template <typename T>
void conv3x3_backward(const BasicTensor<T>& x, const BasicTensor<T>& w, int stride,
                      const BasicTensor<T>& dy, BasicTensor<T>* dx, BasicTensor<T>& dw) {
  const std::size_t n = x.dim(0), ci = x.dim(1), h = x.dim(2), wd = x.dim(3), co = w.dim(0);
  const std::size_t oh = conv_out_extent(h, stride), ow = conv_out_extent(wd, stride);
  require_shape(dy.shape(), {n, co, oh, ow}, "conv3x3 output gradient");
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < co; ++o) {
      for (std::size_t i = 0; i < ci; ++i) {
        detail::plane_conv3x3_backward(
            x.raw() + (b * ci + i) * h * wd, static_cast<int>(h), static_cast<int>(wd),
            w.raw() + (o * ci + i) * 9, stride, dy.raw() + (b * co + o) * oh * ow,
            static_cast<int>(oh), static_cast<int>(ow),
            dx ? dx->raw() + (b * ci + i) * h * wd : nullptr, dw.raw() + (o * ci + i) * 9);
      }
    }
  }
}

// Per-pixel channel mixing, x [N,Cin,H,W], w [Cout,Cin,1,1].
template <typename T>
BasicTensor<T> pointwise_conv1x1(const BasicTensor<T>& x, const BasicTensor<T>& w) {
  if (x.rank() != 4 || w.rank() != 4) throw std::invalid_argument("pointwise_conv1x1: expected NCHW tensors");
  const std::size_t n = x.dim(0), ci = x.dim(1), hw = x.dim(2) * x.dim(3), co = w.dim(0);
  require_shape(w.shape(), {co, ci, 1, 1}, "pointwise_conv1x1 weights");
  BasicTensor<T> y({n, co, x.dim(2), x.dim(3)});
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < co; ++o) {
      T* out = y.raw() + (b * co + o) * hw;
      for (std::size_t i = 0; i < ci; ++i) {
        const T k = w[o * ci + i];
        const T* in = x.raw() + (b * ci + i) * hw;
        for (std::size_t p = 0; p < hw; ++p) out[p] += k * in[p];
      }
    }
  }
  return y;
}

template <typename T>
void pointwise_conv1x1_backward(const BasicTensor<T>& x, const BasicTensor<T>& w,
                                const BasicTensor<T>& dy, BasicTensor<T>* dx, BasicTensor<T>& dw) {
  const std::size_t n = x.dim(0), ci = x.dim(1), hw = x.dim(2) * x.dim(3), co = w.dim(0);
  require_shape(dy.shape(), {n, co, x.dim(2), x.dim(3)}, "pointwise_conv1x1 output gradient");
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < co; ++o) {
      const T* d = dy.raw() + (b * co + o) * hw;
      for (std::size_t i = 0; i < ci; ++i) {
        const T* in = x.raw() + (b * ci + i) * hw;
        T acc{0};
        for (std::size_t p = 0; p < hw; ++p) acc += d[p] * in[p];
        dw[o * ci + i] += acc;
        if (dx) {
          const T k = w[o * ci + i];
          T* g = dx->raw() + (b * ci + i) * hw;
          for (std::size_t p = 0; p < hw; ++p) g[p] += k * d[p];
        }
      }
    }
  }
}

template <typename T>
BasicTensor<T> relu6(const BasicTensor<T>& x) {
  BasicTensor<T> y = x;
  for (T& v : y.data()) v = std::min(std::max(v, T{0}), T{6});
  return y;
}

// relu6 restricted to the linear piece selected by base: x where 0 < base < 6,
// otherwise the clamp value base had.
template <typename T>
BasicTensor<T> relu6_on_piece(const BasicTensor<T>& base, const BasicTensor<T>& x) {
  require_shape(x.shape(), base.shape(), "relu6 gate pattern");
  BasicTensor<T> y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (base[i] <= T{0}) y[i] = T{0};
    else if (base[i] >= T{6}) y[i] = T{6};
  }
  return y;
}

// Gradient flows only where 0 < x < 6.
template <typename T>
BasicTensor<T> relu6_backward(const BasicTensor<T>& x, const BasicTensor<T>& dy) {
  require_shape(dy.shape(), x.shape(), "relu6 output gradient");
  BasicTensor<T> dx(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    dx[i] = (x[i] > T{0} && x[i] < T{6}) ? dy[i] : T{0};
  }
  return dx;
}

// [N,C,H,W] -> [N,C]
template <typename T>
BasicTensor<T> global_avg_pool(const BasicTensor<T>& x) {
  if (x.rank() != 4) throw std::invalid_argument("global_avg_pool: expected NCHW tensor");
  const std::size_t n = x.dim(0), c = x.dim(1), hw = x.dim(2) * x.dim(3);
  BasicTensor<T> y({n, c});
  for (std::size_t i = 0; i < n * c; ++i) {
    double acc = 0.0;
    const T* p = x.raw() + i * hw;
    for (std::size_t k = 0; k < hw; ++k) acc += p[k];
    y[i] = static_cast<T>(acc / static_cast<double>(hw));
  }
  return y;
}

template <typename T>
BasicTensor<T> global_avg_pool_backward(const Shape& input_shape, const BasicTensor<T>& dy) {
  const std::size_t n = input_shape[0], c = input_shape[1], hw = input_shape[2] * input_shape[3];
  require_shape(dy.shape(), {n, c}, "global_avg_pool output gradient");
  BasicTensor<T> dx(input_shape);
  const T scale = T{1} / static_cast<T>(hw);
  for (std::size_t i = 0; i < n * c; ++i) {
    std::fill_n(dx.raw() + i * hw, hw, dy[i] * scale);
  }
  return dx;
}

// x [N,In], w [Out,In], b [Out] -> [N,Out]
template <typename T>
BasicTensor<T> linear(const BasicTensor<T>& x, const BasicTensor<T>& w, const BasicTensor<T>& bias) {
  if (x.rank() != 2 || w.rank() != 2) throw std::invalid_argument("linear: expected 2-d tensors");
  const std::size_t n = x.dim(0), in = x.dim(1), out = w.dim(0);
  require_shape(w.shape(), {out, in}, "linear weights");
  require_shape(bias.shape(), {out}, "linear bias");
  BasicTensor<T> y({n, out});
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < out; ++o) {
      T acc = bias[o];
      for (std::size_t i = 0; i < in; ++i) acc += w[o * in + i] * x[b * in + i];
      y[b * out + o] = acc;
    }
  }
  return y;
}

template <typename T>
void linear_backward(const BasicTensor<T>& x, const BasicTensor<T>& w, const BasicTensor<T>& dy,
                     BasicTensor<T>* dx, BasicTensor<T>& dw, BasicTensor<T>& dbias) {
  const std::size_t n = x.dim(0), in = x.dim(1), out = w.dim(0);
  require_shape(dy.shape(), {n, out}, "linear output gradient");
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t o = 0; o < out; ++o) {
      const T d = dy[b * out + o];
      dbias[o] += d;
      for (std::size_t i = 0; i < in; ++i) {
        dw[o * in + i] += d * x[b * in + i];
        if (dx) (*dx)[b * in + i] += d * w[o * in + i];
      }
    }
  }
}

struct BatchNormCache {
  std::vector<double> mean;
  std::vector<double> inv_std;
};

// Normalizes each channel over (N, H, W). Works on [N,C,H,W] and [N,C].
template <typename T>
class BatchNormKernel {
 public:
  static std::size_t spatial(const Shape& s) {
    std::size_t hw = 1;
    for (std::size_t i = 2; i < s.size(); ++i) hw *= s[i];
    return hw;
  }

  // Batch statistics; updates running stats with the given momentum.
  static BasicTensor<T> train(const BasicTensor<T>& x, const BasicTensor<T>& gamma,
                              const BasicTensor<T>& beta, BasicTensor<T>& running_mean,
                              BasicTensor<T>& running_var, double momentum, double eps,
                              BasicTensor<T>& xhat, BatchNormCache& cache) {
    if (x.rank() < 2) throw std::invalid_argument("batch_norm: expected at least 2-d input");
    const std::size_t n = x.dim(0), c = x.dim(1), hw = spatial(x.shape());
    const std::size_t m = n * hw;
    if (m == 0) throw std::invalid_argument("batch_norm: empty batch in train mode");
    require_shape(gamma.shape(), {c}, "batch_norm gamma");
    require_shape(beta.shape(), {c}, "batch_norm beta");
    BasicTensor<T> y(x.shape());
    xhat = BasicTensor<T>(x.shape());
    cache.mean.assign(c, 0.0);
    cache.inv_std.assign(c, 0.0);
    for (std::size_t ch = 0; ch < c; ++ch) {
      double sum = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const T* p = x.raw() + (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) sum += p[k];
      }
      const double mean = sum / static_cast<double>(m);
      double sq = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const T* p = x.raw() + (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) {
          const double d = p[k] - mean;
          sq += d * d;
        }
      }
      const double var = sq / static_cast<double>(m);
      const double inv_std = 1.0 / std::sqrt(var + eps);
      cache.mean[ch] = mean;
      cache.inv_std[ch] = inv_std;
      const double unbiased = m > 1 ? sq / static_cast<double>(m - 1) : var;
      running_mean[ch] = static_cast<T>((1.0 - momentum) * running_mean[ch] + momentum * mean);
      running_var[ch] = static_cast<T>((1.0 - momentum) * running_var[ch] + momentum * unbiased);
      const T g = gamma[ch], bt = beta[ch];
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t off = (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) {
          const T xh = static_cast<T>((x[off + k] - mean) * inv_std);
          xhat[off + k] = xh;
          y[off + k] = g * xh + bt;
        }
      }
    }
    return y;
  }

  static BasicTensor<T> eval(const BasicTensor<T>& x, const BasicTensor<T>& gamma,
                             const BasicTensor<T>& beta, const BasicTensor<T>& running_mean,
                             const BasicTensor<T>& running_var, double eps) {
    const std::size_t n = x.dim(0), c = x.dim(1), hw = spatial(x.shape());
    require_shape(gamma.shape(), {c}, "batch_norm gamma");
    BasicTensor<T> y(x.shape());
    for (std::size_t ch = 0; ch < c; ++ch) {
      const double inv_std = 1.0 / std::sqrt(static_cast<double>(running_var[ch]) + eps);
      const T scale = static_cast<T>(gamma[ch] * inv_std);
      const T shift = static_cast<T>(beta[ch] - running_mean[ch] * gamma[ch] * inv_std);
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t off = (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) y[off + k] = scale * x[off + k] + shift;
      }
    }
    return y;
  }

  // Train-mode gradient through batch statistics.
  static BasicTensor<T> backward(const BasicTensor<T>& xhat, const BasicTensor<T>& gamma,
                                 const BatchNormCache& cache, const BasicTensor<T>& dy,
                                 BasicTensor<T>& dgamma, BasicTensor<T>& dbeta) {
    require_shape(dy.shape(), xhat.shape(), "batch_norm output gradient");
    const std::size_t n = xhat.dim(0), c = xhat.dim(1), hw = spatial(xhat.shape());
    const double m = static_cast<double>(n * hw);
    BasicTensor<T> dx(xhat.shape());
    for (std::size_t ch = 0; ch < c; ++ch) {
      double sum_dy = 0.0, sum_dy_xhat = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t off = (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) {
          sum_dy += dy[off + k];
          sum_dy_xhat += static_cast<double>(dy[off + k]) * xhat[off + k];
        }
      }
      dgamma[ch] += static_cast<T>(sum_dy_xhat);
      dbeta[ch] += static_cast<T>(sum_dy);
      const double scale = gamma[ch] * cache.inv_std[ch] / m;
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t off = (b * c + ch) * hw;
        for (std::size_t k = 0; k < hw; ++k) {
          dx[off + k] = static_cast<T>(scale * (m * dy[off + k] - sum_dy - xhat[off + k] * sum_dy_xhat));
        }
      }
    }
    return dx;
  }
};

}  // namespace renderwait::nn
