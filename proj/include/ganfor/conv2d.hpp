#pragma once

#include <vector>

#include "ganfor/kernels.hpp"
#include "ganfor/tensor.hpp"

namespace ganfor {

template <typename T>
struct ConvParams {
  Tensor<T> weights;     // (c_out, c_in, k, k)
  std::vector<T> bias;   // length c_out
  int stride = 2;
  int pad = 1;

  int c_out() const { return weights.n; }
  int c_in() const { return weights.c; }
  int kernel() const { return weights.h; }
};

template <typename T>
ConvParams<T> make_conv_params(int c_out, int c_in, int k, int stride, int pad);

// Output spatial size: floor((in + 2*pad - k) / stride) + 1.
int conv2d_out_size(int in, int k, int stride, int pad);

template <typename T>
kernels::ConvDims conv2d_dims(const Tensor<T>& input, const ConvParams<T>& params);

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvParams<T>& params);

template <typename T>
struct ConvGrads {
  Tensor<T> input;        // same shape as forward input
  Tensor<T> weights;      // same shape as params.weights
  std::vector<T> bias;    // length c_out
};

template <typename T>
ConvGrads<T> conv2d_backward(const Tensor<T>& input, const ConvParams<T>& params,
                             const Tensor<T>& grad_out);

}  // namespace ganfor
