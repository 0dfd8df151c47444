#include "ganfor/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "ganfor/error.hpp"
#include "ganfor/kernels_avx2.hpp"
#include "ganfor/kernels_ref.hpp"

namespace ganfor::kernels {

bool cpu_has_avx2() {
#if defined(GANFOR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Backend resolve_from_env() {
  const char* env = std::getenv("GANFOR_BACKEND");
  std::string want = env ? env : "auto";
  if (want == "auto") return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  if (want == "scalar") return Backend::Scalar;
  if (want == "avx2") {
    require(cpu_has_avx2(), "config.backend", "GANFOR_BACKEND=avx2 but CPU lacks AVX2");
    return Backend::Avx2;
  }
  fail("config.backend", "unknown GANFOR_BACKEND value '" + want + "'");
}

std::atomic<int> g_backend{-1};

Backend current() {
  int b = g_backend.load(std::memory_order_relaxed);
  if (b < 0) {
    b = static_cast<int>(resolve_from_env());
    g_backend.store(b, std::memory_order_relaxed);
  }
  return static_cast<Backend>(b);
}

}  // namespace

Backend active_backend() { return current(); }

void set_backend(Backend b) {
  if (b == Backend::Avx2)
    require(cpu_has_avx2(), "config.backend", "CPU lacks AVX2");
  g_backend.store(static_cast<int>(b), std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

#ifdef GANFOR_HAVE_AVX2
#define GANFOR_DISPATCH(fn, ...)                \
  do {                                          \
    if (current() == Backend::Avx2) {           \
      avx2::fn(__VA_ARGS__);                    \
      return;                                   \
    }                                           \
    ref::fn(__VA_ARGS__);                       \
  } while (0)
#else
#define GANFOR_DISPATCH(fn, ...) ref::fn(__VA_ARGS__)
#endif

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    const ConvDims& d) {
  GANFOR_DISPATCH(conv2d_forward, x, w, b, y, d);
}
void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const ConvDims& d) {
  ref::conv2d_forward(x, w, b, y, d);
}

void conv2d_grad_weights(const float* x, const float* gy, float* gw, const ConvDims& d) {
  GANFOR_DISPATCH(conv2d_grad_weights, x, gy, gw, d);
}
void conv2d_grad_weights(const double* x, const double* gy, double* gw, const ConvDims& d) {
  ref::conv2d_grad_weights(x, gy, gw, d);
}

void conv2d_grad_input(const float* w, const float* gy, float* gx, const ConvDims& d) {
  GANFOR_DISPATCH(conv2d_grad_input, w, gy, gx, d);
}
void conv2d_grad_input(const double* w, const double* gy, double* gx, const ConvDims& d) {
  ref::conv2d_grad_input(w, gy, gx, d);
}

void conv2d_grad_bias(const float* gy, float* gb, const ConvDims& d) {
  ref::conv2d_grad_bias(gy, gb, d);
}
void conv2d_grad_bias(const double* gy, double* gb, const ConvDims& d) {
  ref::conv2d_grad_bias(gy, gb, d);
}

void leaky_relu_forward(const float* x, float* y, size_t count, float slope) {
  GANFOR_DISPATCH(leaky_relu_forward, x, y, count, slope);
}
void leaky_relu_forward(const double* x, double* y, size_t count, double slope) {
  ref::leaky_relu_forward(x, y, count, slope);
}

void leaky_relu_backward(const float* x, const float* gy, float* gx, size_t count,
                         float slope) {
  GANFOR_DISPATCH(leaky_relu_backward, x, gy, gx, count, slope);
}
void leaky_relu_backward(const double* x, const double* gy, double* gx, size_t count,
                         double slope) {
  ref::leaky_relu_backward(x, gy, gx, count, slope);
}

void scale_shift(const float* x, float* y, size_t count, float scale, float shift) {
  GANFOR_DISPATCH(scale_shift, x, y, count, scale, shift);
}
void scale_shift(const double* x, double* y, size_t count, double scale, double shift) {
  ref::scale_shift(x, y, count, scale, shift);
}

void adam_step(float* p, const float* g, float* m, float* v, size_t count, float lr,
               float beta1, float beta2, float c1, float c2, float eps) {
  GANFOR_DISPATCH(adam_step, p, g, m, v, count, lr, beta1, beta2, c1, c2, eps);
}
void adam_step(double* p, const double* g, double* m, double* v, size_t count,
               double lr, double beta1, double beta2, double c1, double c2, double eps) {
  ref::adam_step(p, g, m, v, count, lr, beta1, beta2, c1, c2, eps);
}

}  // namespace ganfor::kernels
