#include "ganfor/model.hpp"

#include "ganfor/activations.hpp"
#include "ganfor/loss.hpp"

namespace ganfor {

void DiscriminatorConfig::validate() const {
  require(input_size >= 16 && input_size % 16 == 0, "config.model",
          "input_size must be a positive multiple of 16, got " + std::to_string(input_size));
  for (int w : widths)
    require(w > 0, "config.model", "stage width must be positive");
  const std::array<bool, 4> expected = {false, true, true, true};
  require(batchnorm == expected, "config.model",
          "batchnorm must be off on stage 1 and on for stages 2-4");
  require(leaky_slope >= 0.0f && leaky_slope < 1.0f, "config.model",
          "leaky_slope must be in [0,1)");
  require(bn_epsilon > 0.0f, "config.model", "bn_epsilon must be positive");
  require(bn_momentum > 0.0f && bn_momentum < 1.0f, "config.model",
          "bn_momentum must be in (0,1)");
  require(resolved_head_kernel() == input_size / 16, "config.model",
          "head kernel must equal the post-stage spatial size " +
              std::to_string(input_size / 16));
}

template <typename T>
Discriminator<T> build(const DiscriminatorConfig& config, uint64_t init_seed) {
  config.validate();
  Rng rng(init_seed);

  Discriminator<T> m;
  m.config = config;

  // DCGAN-style init: conv weights N(0, 0.02), biases 0, gamma N(1, 0.02),
  // beta 0. Draw order is fixed (stage by stage) so a seed pins every value.
  auto fill_normal = [&rng](Tensor<T>& t, double mean, double sd) {
    for (auto& v : t.v) v = static_cast<T>(rng.normal(mean, sd));
  };
  auto fill_normal_vec = [&rng](std::vector<T>& t, double mean, double sd) {
    for (auto& v : t) v = static_cast<T>(rng.normal(mean, sd));
  };

  int c_in = 3;
  for (int s = 0; s < 4; ++s) {
    auto conv = make_conv_params<T>(config.widths[s], c_in, 4, 2, 1);
    fill_normal(conv.weights, 0.0, 0.02);
    m.convs.push_back(std::move(conv));
    if (config.batchnorm[s]) {
      auto bn = BatchNormParams<T>::identity(config.widths[s],
                                             static_cast<T>(config.bn_epsilon),
                                             static_cast<T>(config.bn_momentum));
      fill_normal_vec(bn.gamma, 1.0, 0.02);
      m.bns.push_back(std::move(bn));
    }
    c_in = config.widths[s];
  }
  auto head = make_conv_params<T>(1, c_in, config.resolved_head_kernel(), 1, 0);
  fill_normal(head.weights, 0.0, 0.02);
  m.convs.push_back(std::move(head));
  return m;
}

template <typename T>
std::vector<std::span<T>> Discriminator<T>::param_views() {
  std::vector<std::span<T>> v;
  for (int s = 0; s < 5; ++s) {
    v.emplace_back(convs[s].weights.v);
    v.emplace_back(convs[s].bias);
    if (s >= 1 && s <= 3) {
      v.emplace_back(bns[s - 1].gamma);
      v.emplace_back(bns[s - 1].beta);
    }
  }
  return v;
}

template <typename T>
std::vector<std::span<const T>> Discriminator<T>::param_views() const {
  std::vector<std::span<const T>> v;
  for (int s = 0; s < 5; ++s) {
    v.emplace_back(convs[s].weights.v);
    v.emplace_back(convs[s].bias);
    if (s >= 1 && s <= 3) {
      v.emplace_back(bns[s - 1].gamma);
      v.emplace_back(bns[s - 1].beta);
    }
  }
  return v;
}

template <typename T>
size_t Discriminator<T>::parameter_count() const {
  size_t total = 0;
  for (const auto& view : param_views()) total += view.size();
  return total;
}

template <typename T>
std::vector<T> forward(Discriminator<T>& model, const Tensor<T>& input, Mode mode,
                       ForwardCache<T>* cache) {
  require(input.c == 3 && input.h == model.config.input_size &&
              input.w == model.config.input_size,
          "config.shape",
          "model input " + input.shape_str() + " does not match configured size " +
              std::to_string(model.config.input_size));
  require(input.n >= 1, "config.shape", "empty batch");
  if (mode == Mode::Train)
    require(input.n >= 2, "config.shape", "train-mode forward needs batch size >= 2");

  const T slope = static_cast<T>(model.config.leaky_slope);
  if (cache) {
    *cache = ForwardCache<T>{};
    cache->valid = true;
  }

  Tensor<T> x = input;
  for (int s = 0; s < 4; ++s) {
    if (cache) cache->conv_inputs.push_back(x);
    Tensor<T> c = conv2d_forward(x, model.convs[s]);
    if (s >= 1) {
      if (cache) cache->bn_inputs.push_back(c);
      auto bn = batchnorm_forward(c, model.bns[s - 1], mode);
      if (mode == Mode::Train) {
        model.bns[s - 1].running_mean = bn.new_running_mean;
        model.bns[s - 1].running_var = bn.new_running_var;
      }
      if (cache) cache->bn_caches.push_back(std::move(bn.cache));
      c = std::move(bn.out);
    }
    if (cache) cache->act_inputs.push_back(c);
    x = leaky_relu(c, slope);
  }
  if (cache) cache->conv_inputs.push_back(x);
  Tensor<T> z = conv2d_forward(x, model.convs[4]);
  require(z.h == 1 && z.w == 1 && z.c == 1, "config.model",
          "head output is not a single logit: " + z.shape_str());

  std::vector<T> logits(z.v.begin(), z.v.end());
  return logits;
}

template <typename T>
std::vector<T> scores(Discriminator<T>& model, const Tensor<T>& input) {
  auto logits = forward(model, input, Mode::Infer);
  std::vector<T> s(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) s[i] = sigmoid(logits[i]);
  return s;
}

template <typename T>
ModelGrads<T> backward(const Discriminator<T>& model, const ForwardCache<T>& cache,
                       const std::vector<T>& grad_logits) {
  require(cache.valid, "config.state", "backward needs a cached train-mode forward");
  require(cache.conv_inputs.size() == 5 && cache.bn_caches.size() == 3, "config.state",
          "forward cache incomplete");
  require(grad_logits.size() == static_cast<size_t>(cache.conv_inputs[0].n),
          "config.shape", "grad_logits length does not match cached batch");

  const T slope = static_cast<T>(model.config.leaky_slope);
  ModelGrads<T> g;
  g.conv_w.resize(5);
  g.conv_b.resize(5);
  g.bn_gamma.resize(3);
  g.bn_beta.resize(3);

  Tensor<T> gz(static_cast<int>(grad_logits.size()), 1, 1, 1);
  gz.v.assign(grad_logits.begin(), grad_logits.end());

  auto head_grads = conv2d_backward(cache.conv_inputs[4], model.convs[4], gz);
  g.conv_w[4] = std::move(head_grads.weights);
  g.conv_b[4] = std::move(head_grads.bias);
  Tensor<T> gx = std::move(head_grads.input);

  for (int s = 3; s >= 0; --s) {
    gx = leaky_relu_backward(cache.act_inputs[s], slope, gx);
    if (s >= 1) {
      auto bn_grads = batchnorm_backward(cache.bn_inputs[s - 1], cache.bn_caches[s - 1], gx);
      g.bn_gamma[s - 1] = std::move(bn_grads.gamma);
      g.bn_beta[s - 1] = std::move(bn_grads.beta);
      gx = std::move(bn_grads.input);
    }
    auto conv_grads = conv2d_backward(cache.conv_inputs[s], model.convs[s], gx);
    g.conv_w[s] = std::move(conv_grads.weights);
    g.conv_b[s] = std::move(conv_grads.bias);
    gx = std::move(conv_grads.input);
  }
  g.input = std::move(gx);
  return g;
}

template <typename T>
std::vector<std::span<const T>> ModelGrads<T>::views() const {
  std::vector<std::span<const T>> v;
  for (int s = 0; s < 5; ++s) {
    v.emplace_back(conv_w[s].v);
    v.emplace_back(conv_b[s]);
    if (s >= 1 && s <= 3) {
      v.emplace_back(bn_gamma[s - 1]);
      v.emplace_back(bn_beta[s - 1]);
    }
  }
  return v;
}

template struct Discriminator<float>;
template struct Discriminator<double>;
template struct ModelGrads<float>;
template struct ModelGrads<double>;
template Discriminator<float> build<float>(const DiscriminatorConfig&, uint64_t);
template Discriminator<double> build<double>(const DiscriminatorConfig&, uint64_t);
template std::vector<float> forward<float>(Discriminator<float>&, const Tensor<float>&, Mode,
                                           ForwardCache<float>*);
template std::vector<double> forward<double>(Discriminator<double>&, const Tensor<double>&, Mode,
                                             ForwardCache<double>*);
template std::vector<float> scores<float>(Discriminator<float>&, const Tensor<float>&);
template std::vector<double> scores<double>(Discriminator<double>&, const Tensor<double>&);
template ModelGrads<float> backward<float>(const Discriminator<float>&, const ForwardCache<float>&,
                                           const std::vector<float>&);
template ModelGrads<double> backward<double>(const Discriminator<double>&,
                                             const ForwardCache<double>&,
                                             const std::vector<double>&);

}  // namespace ganfor
