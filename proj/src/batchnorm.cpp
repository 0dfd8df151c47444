#include "ganfor/batchnorm.hpp"

#include <cmath>

namespace ganfor {

namespace {

template <typename T>
void check_channels(const Tensor<T>& input, const BatchNormParams<T>& params) {
  require(input.c == params.channels(), "config.shape",
          "batchnorm channels: input " + input.shape_str() + " vs params " +
              std::to_string(params.channels()));
}

}  // namespace

template <typename T>
BatchNormResult<T> batchnorm_forward(const Tensor<T>& input, const BatchNormParams<T>& params,
                                     Mode mode) {
  check_channels(input, params);
  const int C = input.c;
  const size_t plane = static_cast<size_t>(input.h) * input.w;
  const size_t m = static_cast<size_t>(input.n) * plane;

  BatchNormResult<T> r;
  r.out = Tensor<T>(input.n, input.c, input.h, input.w);
  r.new_running_mean = params.running_mean;
  r.new_running_var = params.running_var;

  if (mode == Mode::Infer) {
    for (int c = 0; c < C; ++c) {
      const T rm = params.running_mean[c];
      const T rs = T(1) / std::sqrt(params.running_var[c] + params.epsilon);
      const T g = params.gamma[c];
      const T b = params.beta[c];
      for (int n = 0; n < input.n; ++n) {
        const T* in = input.data() + (static_cast<size_t>(n) * C + c) * plane;
        T* out = r.out.data() + (static_cast<size_t>(n) * C + c) * plane;
        for (size_t i = 0; i < plane; ++i) out[i] = g * ((in[i] - rm) * rs) + b;
      }
    }
    return r;
  }

  require(m >= 2, "config.shape",
          "batchnorm train mode needs N*H*W >= 2, got " + std::to_string(m));

  r.cache.xhat = Tensor<T>(input.n, input.c, input.h, input.w);
  r.cache.inv_std.assign(C, T(0));
  r.cache.gamma = params.gamma;
  r.cache.valid = true;

  for (int c = 0; c < C; ++c) {
    T sum = T(0);
    for (int n = 0; n < input.n; ++n) {
      const T* in = input.data() + (static_cast<size_t>(n) * C + c) * plane;
      for (size_t i = 0; i < plane; ++i) sum += in[i];
    }
    const T mean = sum / static_cast<T>(m);

    // Biased variance, divisor N*H*W.
    T sq = T(0);
    for (int n = 0; n < input.n; ++n) {
      const T* in = input.data() + (static_cast<size_t>(n) * C + c) * plane;
      for (size_t i = 0; i < plane; ++i) {
        const T dxi = in[i] - mean;
        sq += dxi * dxi;
      }
    }
    const T var = sq / static_cast<T>(m);
    const T inv_std = T(1) / std::sqrt(var + params.epsilon);
    r.cache.inv_std[c] = inv_std;

    const T g = params.gamma[c];
    const T b = params.beta[c];
    for (int n = 0; n < input.n; ++n) {
      const T* in = input.data() + (static_cast<size_t>(n) * C + c) * plane;
      T* xh = r.cache.xhat.data() + (static_cast<size_t>(n) * C + c) * plane;
      T* out = r.out.data() + (static_cast<size_t>(n) * C + c) * plane;
      for (size_t i = 0; i < plane; ++i) {
        xh[i] = (in[i] - mean) * inv_std;
        out[i] = g * xh[i] + b;
      }
    }

    r.new_running_mean[c] = (T(1) - params.momentum) * params.running_mean[c] +
                            params.momentum * mean;
    r.new_running_var[c] = (T(1) - params.momentum) * params.running_var[c] +
                           params.momentum * var;
  }
  return r;
}

template <typename T>
BatchNormGrads<T> batchnorm_backward(const Tensor<T>& input, const BatchNormCache<T>& cache,
                                     const Tensor<T>& grad_out) {
  require(cache.valid, "config.state",
          "batchnorm_backward needs the cache of a preceding train-mode forward");
  require_same_shape(input, grad_out, "batchnorm grad_out");
  require_same_shape(input, cache.xhat, "batchnorm cache");

  const int C = input.c;
  const size_t plane = static_cast<size_t>(input.h) * input.w;
  const size_t m = static_cast<size_t>(input.n) * plane;

  BatchNormGrads<T> g;
  g.input = Tensor<T>(input.n, input.c, input.h, input.w);
  g.gamma.assign(C, T(0));
  g.beta.assign(C, T(0));

  for (int c = 0; c < C; ++c) {
    T sum_gy = T(0);
    T sum_gy_xhat = T(0);
    for (int n = 0; n < input.n; ++n) {
      const T* gy = grad_out.data() + (static_cast<size_t>(n) * C + c) * plane;
      const T* xh = cache.xhat.data() + (static_cast<size_t>(n) * C + c) * plane;
      for (size_t i = 0; i < plane; ++i) {
        sum_gy += gy[i];
        sum_gy_xhat += gy[i] * xh[i];
      }
    }
    g.beta[c] = sum_gy;
    g.gamma[c] = sum_gy_xhat;

    // Exact adjoint of the train-mode forward, including the dependence of
    // the batch mean and variance on the input.
    const T gam = cache.gamma[c];
    const T inv_std = cache.inv_std[c];
    const T mean_gy = sum_gy / static_cast<T>(m);
    const T mean_gy_xhat = sum_gy_xhat / static_cast<T>(m);
    for (int n = 0; n < input.n; ++n) {
      const T* gy = grad_out.data() + (static_cast<size_t>(n) * C + c) * plane;
      const T* xh = cache.xhat.data() + (static_cast<size_t>(n) * C + c) * plane;
      T* gx = g.input.data() + (static_cast<size_t>(n) * C + c) * plane;
      for (size_t i = 0; i < plane; ++i)
        gx[i] = gam * inv_std * (gy[i] - mean_gy - xh[i] * mean_gy_xhat);
    }
  }
  return g;
}

template BatchNormResult<float> batchnorm_forward<float>(const Tensor<float>&,
                                                         const BatchNormParams<float>&, Mode);
template BatchNormResult<double> batchnorm_forward<double>(const Tensor<double>&,
                                                           const BatchNormParams<double>&, Mode);
template BatchNormGrads<float> batchnorm_backward<float>(const Tensor<float>&,
                                                         const BatchNormCache<float>&,
                                                         const Tensor<float>&);
template BatchNormGrads<double> batchnorm_backward<double>(const Tensor<double>&,
                                                           const BatchNormCache<double>&,
                                                           const Tensor<double>&);

}  // namespace ganfor
