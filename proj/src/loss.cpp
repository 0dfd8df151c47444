#include "ganfor/loss.hpp"

#include <cmath>

namespace ganfor {

template <typename T>
T sigmoid(T z) {
  if (z >= T(0)) return T(1) / (T(1) + std::exp(-z));
  const T e = std::exp(z);
  return e / (T(1) + e);
}

template <typename T>
BceResult<T> bce_with_logits(const Tensor<T>& logits, const Tensor<T>& labels) {
  require_same_shape(logits, labels, "bce labels");
  require(logits.size() > 0, "config.shape", "bce on empty tensor");

  const size_t count = logits.size();
  BceResult<T> r;
  r.grad_logits = Tensor<T>(logits.n, logits.c, logits.h, logits.w);

  T sum = T(0);
  for (size_t i = 0; i < count; ++i) {
    const T z = logits.v[i];
    const T y = labels.v[i];
    require(y == T(0) || y == T(1), "config.label",
            "bce label must be exactly 0 or 1, got " + std::to_string(static_cast<double>(y)));
    const T zpos = z > T(0) ? z : T(0);
    const T zabs = z >= T(0) ? z : -z;
    sum += zpos - z * y + std::log1p(std::exp(-zabs));
    r.grad_logits.v[i] = (sigmoid(z) - y) / static_cast<T>(count);
  }
  r.loss = sum / static_cast<T>(count);
  return r;
}

template float sigmoid<float>(float);
template double sigmoid<double>(double);
template BceResult<float> bce_with_logits<float>(const Tensor<float>&, const Tensor<float>&);
template BceResult<double> bce_with_logits<double>(const Tensor<double>&, const Tensor<double>&);

}  // namespace ganfor
