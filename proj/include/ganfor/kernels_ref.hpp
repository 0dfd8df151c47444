#pragma once

#include <cmath>
#include <cstddef>

#include "ganfor/kernels.hpp"

// Scalar reference kernels. These define the numeric contract: the SIMD
// variants must reproduce them bit-for-bit. Loop order is load-bearing.
namespace ganfor::kernels::ref {

template <typename T>
void conv2d_forward(const T* x, const T* w, const T* b, T* y, const ConvDims& d) {
  for (int n = 0; n < d.n; ++n) {
    for (int co = 0; co < d.c_out; ++co) {
      const T* wk = w + static_cast<size_t>(co) * d.c_in * d.k * d.k;
      for (int oh = 0; oh < d.out_h; ++oh) {
        for (int ow = 0; ow < d.out_w; ++ow) {
          T acc = b[co];
          for (int ci = 0; ci < d.c_in; ++ci) {
            const T* xc = x + (static_cast<size_t>(n) * d.c_in + ci) * d.h * d.w;
            const T* wc = wk + static_cast<size_t>(ci) * d.k * d.k;
            for (int kh = 0; kh < d.k; ++kh) {
              const int ih = oh * d.stride - d.pad + kh;
              if (ih < 0 || ih >= d.h) continue;
              for (int kw = 0; kw < d.k; ++kw) {
                const int iw = ow * d.stride - d.pad + kw;
                if (iw < 0 || iw >= d.w) continue;
                acc += wc[kh * d.k + kw] * xc[static_cast<size_t>(ih) * d.w + iw];
              }
            }
          }
          y[((static_cast<size_t>(n) * d.c_out + co) * d.out_h + oh) * d.out_w + ow] = acc;
        }
      }
    }
  }
}

template <typename T>
void conv2d_grad_weights(const T* x, const T* gy, T* gw, const ConvDims& d) {
  for (int co = 0; co < d.c_out; ++co) {
    for (int ci = 0; ci < d.c_in; ++ci) {
      const T* xc0 = x + static_cast<size_t>(ci) * d.h * d.w;
      for (int kh = 0; kh < d.k; ++kh) {
        for (int kw = 0; kw < d.k; ++kw) {
          T acc = T(0);
          for (int n = 0; n < d.n; ++n) {
            const T* xc = xc0 + static_cast<size_t>(n) * d.c_in * d.h * d.w;
            const T* gc = gy + (static_cast<size_t>(n) * d.c_out + co) * d.out_h * d.out_w;
            for (int oh = 0; oh < d.out_h; ++oh) {
              const int ih = oh * d.stride - d.pad + kh;
              if (ih < 0 || ih >= d.h) continue;
              for (int ow = 0; ow < d.out_w; ++ow) {
                const int iw = ow * d.stride - d.pad + kw;
                if (iw < 0 || iw >= d.w) continue;
                acc += xc[static_cast<size_t>(ih) * d.w + iw] * gc[static_cast<size_t>(oh) * d.out_w + ow];
              }
            }
          }
          gw[((static_cast<size_t>(co) * d.c_in + ci) * d.k + kh) * d.k + kw] = acc;
        }
      }
    }
  }
}

template <typename T>
void conv2d_grad_input(const T* w, const T* gy, T* gx, const ConvDims& d) {
  for (int n = 0; n < d.n; ++n) {
    for (int ci = 0; ci < d.c_in; ++ci) {
      T* gxc = gx + (static_cast<size_t>(n) * d.c_in + ci) * d.h * d.w;
      for (int ih = 0; ih < d.h; ++ih) {
        for (int iw = 0; iw < d.w; ++iw) {
          T acc = T(0);
          for (int co = 0; co < d.c_out; ++co) {
            const T* wc = w + (static_cast<size_t>(co) * d.c_in + ci) * d.k * d.k;
            const T* gc = gy + (static_cast<size_t>(n) * d.c_out + co) * d.out_h * d.out_w;
            for (int kh = 0; kh < d.k; ++kh) {
              const int oh_num = ih + d.pad - kh;
              if (oh_num < 0 || oh_num % d.stride != 0) continue;
              const int oh = oh_num / d.stride;
              if (oh >= d.out_h) continue;
              for (int kw = 0; kw < d.k; ++kw) {
                const int ow_num = iw + d.pad - kw;
                if (ow_num < 0 || ow_num % d.stride != 0) continue;
                const int ow = ow_num / d.stride;
                if (ow >= d.out_w) continue;
                acc += wc[kh * d.k + kw] * gc[static_cast<size_t>(oh) * d.out_w + ow];
              }
            }
          }
          gxc[static_cast<size_t>(ih) * d.w + iw] = acc;
        }
      }
    }
  }
}

template <typename T>
void conv2d_grad_bias(const T* gy, T* gb, const ConvDims& d) {
  for (int co = 0; co < d.c_out; ++co) {
    T acc = T(0);
    for (int n = 0; n < d.n; ++n) {
      const T* gc = gy + (static_cast<size_t>(n) * d.c_out + co) * d.out_h * d.out_w;
      for (int i = 0; i < d.out_h * d.out_w; ++i) acc += gc[i];
    }
    gb[co] = acc;
  }
}

template <typename T>
void leaky_relu_forward(const T* x, T* y, size_t count, T slope) {
  for (size_t i = 0; i < count; ++i) y[i] = x[i] >= T(0) ? x[i] : slope * x[i];
}

template <typename T>
void leaky_relu_backward(const T* x, const T* gy, T* gx, size_t count, T slope) {
  // Derivative at exactly 0 is 1.
  for (size_t i = 0; i < count; ++i) gx[i] = x[i] >= T(0) ? gy[i] : slope * gy[i];
}

template <typename T>
void scale_shift(const T* x, T* y, size_t count, T scale, T shift) {
  for (size_t i = 0; i < count; ++i) y[i] = x[i] * scale + shift;
}

template <typename T>
void adam_step(T* p, const T* g, T* m, T* v, size_t count, T lr, T beta1, T beta2,
               T c1, T c2, T eps) {
  const T om1 = T(1) - beta1;
  const T om2 = T(1) - beta2;
  for (size_t i = 0; i < count; ++i) {
    const T gi = g[i];
    const T mi = beta1 * m[i] + om1 * gi;
    const T vi = beta2 * v[i] + om2 * (gi * gi);
    m[i] = mi;
    v[i] = vi;
    const T mhat = mi * c1;
    const T vhat = vi * c2;
    p[i] = p[i] - (lr * mhat) / (std::sqrt(vhat) + eps);
  }
}

}  // namespace ganfor::kernels::ref
