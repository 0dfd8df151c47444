#pragma once

#include "ganfor/tensor.hpp"

namespace ganfor {

template <typename T>
struct BceResult {
  T loss = T(0);          // mean over elements
  Tensor<T> grad_logits;  // (sigmoid(z) - y) / count
};

// Numerically stable binary cross entropy on logits:
//   loss_i = max(z,0) - z*y + log(1 + exp(-|z|)).
// Labels must be exactly 0 (fake) or 1 (real). Safe for |z| up to 1e4.
template <typename T>
BceResult<T> bce_with_logits(const Tensor<T>& logits, const Tensor<T>& labels);

template <typename T>
T sigmoid(T z);

}  // namespace ganfor
