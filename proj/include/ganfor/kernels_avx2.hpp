#pragma once

#include "ganfor/kernels.hpp"

#ifdef GANFOR_HAVE_AVX2

// AVX2 float kernels, bit-identical to kernels::ref. Compiled in a
// dedicated translation unit with -mavx2; call only after cpu_has_avx2().
namespace ganfor::kernels::avx2 {

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    const ConvDims& d);
void conv2d_grad_weights(const float* x, const float* gy, float* gw, const ConvDims& d);
void conv2d_grad_input(const float* w, const float* gy, float* gx, const ConvDims& d);
void leaky_relu_forward(const float* x, float* y, size_t count, float slope);
void leaky_relu_backward(const float* x, const float* gy, float* gx, size_t count,
                         float slope);
void scale_shift(const float* x, float* y, size_t count, float scale, float shift);
void adam_step(float* p, const float* g, float* m, float* v, size_t count, float lr,
               float beta1, float beta2, float c1, float c2, float eps);

}  // namespace ganfor::kernels::avx2

#endif  // GANFOR_HAVE_AVX2
