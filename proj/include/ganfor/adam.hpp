#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ganfor/tensor.hpp"

namespace ganfor {

template <typename T>
struct AdamHyper {
  T lr = T(2e-4);
  T beta1 = T(0.5);
  T beta2 = T(0.999);
  T eps = T(1e-8);  // added outside the square root

  void validate() const {
    require(lr > T(0) && eps > T(0), "config.optim", "adam lr/eps must be positive");
    require(beta1 > T(0) && beta1 < T(1) && beta2 > T(0) && beta2 < T(1),
            "config.optim", "adam betas must be in (0,1)");
  }
};

// First/second moments per parameter, flat in parameter-view order.
template <typename T>
struct AdamState {
  std::vector<T> m, v;
  uint64_t t = 0;

  static AdamState zeros(size_t count) {
    AdamState s;
    s.m.assign(count, T(0));
    s.v.assign(count, T(0));
    return s;
  }
};

// One Adam step over a set of parameter blocks and matching gradients:
//   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
//   mhat = m/(1-b1^t);     vhat = v/(1-b2^t)      (t after increment)
//   p <- p - lr * mhat / (sqrt(vhat) + eps)
template <typename T>
void adam_step(std::vector<std::span<T>>& params,
               const std::vector<std::span<const T>>& grads, AdamState<T>& state,
               const AdamHyper<T>& hyper);

}  // namespace ganfor
