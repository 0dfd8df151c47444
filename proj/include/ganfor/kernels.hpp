#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace ganfor::kernels {

// Runtime-selected kernel backend. The AVX2 variants are written to be
// bit-identical to the scalar reference: lanes map to distinct output
// elements and the per-element summation order is unchanged, so switching
// backends never changes results. Equivalence is enforced by tests.
enum class Backend { Scalar, Avx2 };

bool cpu_has_avx2();
// Active backend: resolved once from GANFOR_BACKEND (auto|scalar|avx2),
// defaulting to the best supported variant.
Backend active_backend();
void set_backend(Backend b);
const char* backend_name(Backend b);

struct ConvDims {
  int n = 0;
  int c_in = 0, h = 0, w = 0;
  int c_out = 0, k = 0;
  int stride = 1, pad = 0;
  int out_h = 0, out_w = 0;
};

// y[n,co,oh,ow] = b[co] + sum over (ci,kh,kw) of w * x, zero padding,
// cross-correlation (no kernel flip). Summation order (ci,kh,kw) starting
// from the bias is part of the contract.
void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    const ConvDims& d);
void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const ConvDims& d);

// gw[co,ci,kh,kw] = sum over (n,oh,ow) of x * gy. gw is overwritten.
void conv2d_grad_weights(const float* x, const float* gy, float* gw, const ConvDims& d);
void conv2d_grad_weights(const double* x, const double* gy, double* gw, const ConvDims& d);

// gx[n,ci,ih,iw] = sum over (co,kh,kw) of w * gy at the mapped output
// position. gx is overwritten.
void conv2d_grad_input(const float* w, const float* gy, float* gx, const ConvDims& d);
void conv2d_grad_input(const double* w, const double* gy, double* gx, const ConvDims& d);

// gb[co] = sum over (n,oh,ow) of gy.
void conv2d_grad_bias(const float* gy, float* gb, const ConvDims& d);
void conv2d_grad_bias(const double* gy, double* gb, const ConvDims& d);

void leaky_relu_forward(const float* x, float* y, size_t count, float slope);
void leaky_relu_forward(const double* x, double* y, size_t count, double slope);
void leaky_relu_backward(const float* x, const float* gy, float* gx, size_t count, float slope);
void leaky_relu_backward(const double* x, const double* gy, double* gx, size_t count, double slope);

// y[i] = x[i] * scale + shift
void scale_shift(const float* x, float* y, size_t count, float scale, float shift);
void scale_shift(const double* x, double* y, size_t count, double scale, double shift);

// One Adam update over a flat parameter block. c1 = 1/(1-beta1^t) and
// c2 = 1/(1-beta2^t) are precomputed by the caller for step t.
void adam_step(float* p, const float* g, float* m, float* v, size_t count,
               float lr, float beta1, float beta2, float c1, float c2, float eps);
void adam_step(double* p, const double* g, double* m, double* v, size_t count,
               double lr, double beta1, double beta2, double c1, double c2, double eps);

}  // namespace ganfor::kernels
