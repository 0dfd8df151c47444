#pragma once

#include "ganfor/tensor.hpp"

namespace ganfor {

// f(x) = x for x >= 0, slope*x otherwise. slope must be in [0,1).
template <typename T>
Tensor<T> leaky_relu(const Tensor<T>& input, T slope);

template <typename T>
Tensor<T> leaky_relu_backward(const Tensor<T>& input, T slope, const Tensor<T>& grad_out);

}  // namespace ganfor
