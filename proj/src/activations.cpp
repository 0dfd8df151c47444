#include "ganfor/activations.hpp"

#include "ganfor/kernels.hpp"

namespace ganfor {

namespace {
template <typename T>
void check_slope(T slope) {
  require(slope >= T(0) && slope < T(1), "config.value",
          "leaky_relu slope must be in [0,1)");
}
}  // namespace

template <typename T>
Tensor<T> leaky_relu(const Tensor<T>& input, T slope) {
  check_slope(slope);
  Tensor<T> out(input.n, input.c, input.h, input.w);
  kernels::leaky_relu_forward(input.data(), out.data(), input.size(), slope);
  return out;
}

template <typename T>
Tensor<T> leaky_relu_backward(const Tensor<T>& input, T slope, const Tensor<T>& grad_out) {
  check_slope(slope);
  require_same_shape(input, grad_out, "leaky_relu grad_out");
  Tensor<T> gx(input.n, input.c, input.h, input.w);
  kernels::leaky_relu_backward(input.data(), grad_out.data(), gx.data(), input.size(), slope);
  return gx;
}

template Tensor<float> leaky_relu<float>(const Tensor<float>&, float);
template Tensor<double> leaky_relu<double>(const Tensor<double>&, double);
template Tensor<float> leaky_relu_backward<float>(const Tensor<float>&, float,
                                                  const Tensor<float>&);
template Tensor<double> leaky_relu_backward<double>(const Tensor<double>&, double,
                                                    const Tensor<double>&);

}  // namespace ganfor
