#pragma once

#include <vector>

#include "ganfor/tensor.hpp"

namespace ganfor {

enum class Mode { Train, Infer };

template <typename T>
struct BatchNormParams {
  std::vector<T> gamma, beta;
  std::vector<T> running_mean, running_var;
  T epsilon = T(1e-5);
  T momentum = T(0.1);

  static BatchNormParams identity(int channels, T epsilon = T(1e-5), T momentum = T(0.1)) {
    BatchNormParams p;
    p.gamma.assign(channels, T(1));
    p.beta.assign(channels, T(0));
    p.running_mean.assign(channels, T(0));
    p.running_var.assign(channels, T(1));
    p.epsilon = epsilon;
    p.momentum = momentum;
    return p;
  }
  int channels() const { return static_cast<int>(gamma.size()); }
};

// Saved train-mode state needed by the backward pass.
template <typename T>
struct BatchNormCache {
  Tensor<T> xhat;
  std::vector<T> inv_std;
  std::vector<T> gamma;
  bool valid = false;
};

template <typename T>
struct BatchNormResult {
  Tensor<T> out;
  // Updated running stats: running <- (1-momentum)*running + momentum*batch.
  // The op is pure; the caller decides whether to adopt them.
  std::vector<T> new_running_mean, new_running_var;
  BatchNormCache<T> cache;  // valid only in train mode
};

template <typename T>
BatchNormResult<T> batchnorm_forward(const Tensor<T>& input, const BatchNormParams<T>& params,
                                     Mode mode);

template <typename T>
struct BatchNormGrads {
  Tensor<T> input;
  std::vector<T> gamma, beta;
};

template <typename T>
BatchNormGrads<T> batchnorm_backward(const Tensor<T>& input, const BatchNormCache<T>& cache,
                                     const Tensor<T>& grad_out);

}  // namespace ganfor
