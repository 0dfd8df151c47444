#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ganfor/batchnorm.hpp"
#include "ganfor/conv2d.hpp"
#include "ganfor/rng.hpp"
#include "ganfor/tensor.hpp"

namespace ganfor {

// Four stride-2 4x4 conv stages (batchnorm on stages 2-4, leaky relu
// everywhere) followed by a single conv head that maps the remaining
// spatial extent to one logit per image. For a 128 input the spatial trace
// is 128 -> 64 -> 32 -> 16 -> 8 -> 1.
struct DiscriminatorConfig {
  int input_size = 128;
  std::array<int, 4> widths = {64, 128, 256, 512};
  // Stage batchnorm placement; the only accepted value is {false,true,true,true}.
  std::array<bool, 4> batchnorm = {false, true, true, true};
  float leaky_slope = 0.2f;
  float bn_epsilon = 1e-5f;
  float bn_momentum = 0.1f;
  int head_kernel = 0;  // 0 = auto (input_size / 16)

  int resolved_head_kernel() const { return head_kernel > 0 ? head_kernel : input_size / 16; }
  void validate() const;
};

template <typename T>
struct Discriminator {
  DiscriminatorConfig config;
  std::vector<ConvParams<T>> convs;     // 4 stages + head
  std::vector<BatchNormParams<T>> bns;  // stages 2..4

  // Flat views over trainable parameters in checkpoint order.
  std::vector<std::span<T>> param_views();
  std::vector<std::span<const T>> param_views() const;
  size_t parameter_count() const;
};

template <typename T>
Discriminator<T> build(const DiscriminatorConfig& config, uint64_t init_seed);

template <typename T>
struct ForwardCache {
  bool valid = false;
  std::vector<Tensor<T>> conv_inputs;  // input to conv1..4 and head
  std::vector<Tensor<T>> act_inputs;   // input to each leaky relu
  std::vector<Tensor<T>> bn_inputs;    // input to bn2..4
  std::vector<BatchNormCache<T>> bn_caches;
};

// Train mode updates the model's BN running statistics (the only mutation)
// and fills `cache` if given. Infer mode leaves the model untouched.
template <typename T>
std::vector<T> forward(Discriminator<T>& model, const Tensor<T>& input, Mode mode,
                       ForwardCache<T>* cache = nullptr);

// Sigmoid scores from an infer-mode forward; decision is real iff > 0.5.
template <typename T>
std::vector<T> scores(Discriminator<T>& model, const Tensor<T>& input);

template <typename T>
struct ModelGrads {
  std::vector<Tensor<T>> conv_w;
  std::vector<std::vector<T>> conv_b;
  std::vector<std::vector<T>> bn_gamma, bn_beta;
  Tensor<T> input;

  std::vector<std::span<const T>> views() const;  // matches param_views order
};

template <typename T>
ModelGrads<T> backward(const Discriminator<T>& model, const ForwardCache<T>& cache,
                       const std::vector<T>& grad_logits);

}  // namespace ganfor
