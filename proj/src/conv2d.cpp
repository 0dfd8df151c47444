#include "ganfor/conv2d.hpp"

namespace ganfor {

int conv2d_out_size(int in, int k, int stride, int pad) {
  return (in + 2 * pad - k) / stride + 1;
}

template <typename T>
ConvParams<T> make_conv_params(int c_out, int c_in, int k, int stride, int pad) {
  require(c_out > 0 && c_in > 0 && k > 0, "config.shape", "conv dims must be positive");
  require(stride > 0 && pad >= 0, "config.shape", "bad conv stride/pad");
  ConvParams<T> p;
  p.weights = Tensor<T>(c_out, c_in, k, k);
  p.bias.assign(c_out, T(0));
  p.stride = stride;
  p.pad = pad;
  return p;
}

template <typename T>
kernels::ConvDims conv2d_dims(const Tensor<T>& input, const ConvParams<T>& params) {
  const int k = params.kernel();
  require(params.weights.h == params.weights.w, "config.shape", "conv kernel not square");
  require(input.c == params.c_in(), "config.shape",
          "conv input channels " + input.shape_str() + " vs weights " +
              params.weights.shape_str());
  require(input.h >= k - params.pad && input.w >= k - params.pad, "config.shape",
          "conv input " + input.shape_str() + " too small for kernel " + std::to_string(k) +
              " pad " + std::to_string(params.pad));
  kernels::ConvDims d;
  d.n = input.n;
  d.c_in = input.c;
  d.h = input.h;
  d.w = input.w;
  d.c_out = params.c_out();
  d.k = k;
  d.stride = params.stride;
  d.pad = params.pad;
  d.out_h = conv2d_out_size(input.h, k, params.stride, params.pad);
  d.out_w = conv2d_out_size(input.w, k, params.stride, params.pad);
  require(d.out_h >= 1 && d.out_w >= 1, "config.shape", "conv output would be empty");
  return d;
}

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvParams<T>& params) {
  const auto d = conv2d_dims(input, params);
  Tensor<T> out(d.n, d.c_out, d.out_h, d.out_w);
  kernels::conv2d_forward(input.data(), params.weights.data(), params.bias.data(),
                          out.data(), d);
  return out;
}

template <typename T>
ConvGrads<T> conv2d_backward(const Tensor<T>& input, const ConvParams<T>& params,
                             const Tensor<T>& grad_out) {
  const auto d = conv2d_dims(input, params);
  require(grad_out.n == d.n && grad_out.c == d.c_out && grad_out.h == d.out_h &&
              grad_out.w == d.out_w,
          "config.shape",
          "conv grad_out shape " + grad_out.shape_str() + " does not match forward output");
  ConvGrads<T> g;
  g.input = Tensor<T>(input.n, input.c, input.h, input.w);
  g.weights = Tensor<T>(params.weights.n, params.weights.c, params.weights.h,
                        params.weights.w);
  g.bias.assign(params.bias.size(), T(0));
  kernels::conv2d_grad_input(params.weights.data(), grad_out.data(), g.input.data(), d);
  kernels::conv2d_grad_weights(input.data(), grad_out.data(), g.weights.data(), d);
  kernels::conv2d_grad_bias(grad_out.data(), g.bias.data(), d);
  return g;
}

template ConvParams<float> make_conv_params<float>(int, int, int, int, int);
template ConvParams<double> make_conv_params<double>(int, int, int, int, int);
template kernels::ConvDims conv2d_dims<float>(const Tensor<float>&, const ConvParams<float>&);
template kernels::ConvDims conv2d_dims<double>(const Tensor<double>&, const ConvParams<double>&);
template Tensor<float> conv2d_forward<float>(const Tensor<float>&, const ConvParams<float>&);
template Tensor<double> conv2d_forward<double>(const Tensor<double>&, const ConvParams<double>&);
template ConvGrads<float> conv2d_backward<float>(const Tensor<float>&, const ConvParams<float>&,
                                                 const Tensor<float>&);
template ConvGrads<double> conv2d_backward<double>(const Tensor<double>&, const ConvParams<double>&,
                                                   const Tensor<double>&);

}  // namespace ganfor
