#include "ganfor/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "ganfor/activations.hpp"
#include "ganfor/batchnorm.hpp"
#include "ganfor/conv2d.hpp"
#include "ganfor/error.hpp"
#include "ganfor/loss.hpp"
#include "ganfor/model.hpp"
#include "ganfor/rng.hpp"

namespace ganfor {

namespace {

double rel_err(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-8});
}

void fill_uniform(std::vector<double>& v, Rng& rng, double lo, double hi) {
  for (auto& x : v) x = rng.uniform(lo, hi);
}

// Values bounded away from zero keep finite differences off the leaky-relu
// kink (the two-sided stencil must not straddle it).
void fill_off_kink(std::vector<double>& v, Rng& rng, double lo, double hi) {
  for (auto& x : v) {
    do {
      x = rng.uniform(lo, hi);
    } while (std::abs(x) < 1e-2);
  }
}

}  // namespace

double finite_difference_max_err(const std::function<double()>& eval, double* x,
                                 const double* analytic, size_t count, double step) {
  double worst = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double orig = x[i];
    x[i] = orig + step;
    const double fp = eval();
    x[i] = orig - step;
    const double fm = eval();
    x[i] = orig;
    const double numeric = (fp - fm) / (2.0 * step);
    worst = std::max(worst, rel_err(analytic[i], numeric));
  }
  return worst;
}

GradCheckResult gradcheck_conv(uint64_t seed) {
  Rng rng(seed);
  Tensor<double> x(2, 3, 8, 8);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto params = make_conv_params<double>(4, 3, 4, 2, 1);
  fill_uniform(params.weights.v, rng, -1.0, 1.0);
  fill_uniform(params.bias, rng, -0.5, 0.5);

  const auto d = conv2d_dims(x, params);
  Tensor<double> proj(d.n, d.c_out, d.out_h, d.out_w);
  fill_uniform(proj.v, rng, -1.0, 1.0);

  auto eval = [&]() {
    auto y = conv2d_forward(x, params);
    double s = 0.0;
    for (size_t i = 0; i < y.size(); ++i) s += y.v[i] * proj.v[i];
    return s;
  };
  auto grads = conv2d_backward(x, params, proj);

  GradCheckResult r{"conv", 0.0, 0};
  r.max_rel_err = std::max(
      {finite_difference_max_err(eval, x.data(), grads.input.data(), x.size()),
       finite_difference_max_err(eval, params.weights.data(), grads.weights.data(),
                                 params.weights.size()),
       finite_difference_max_err(eval, params.bias.data(), grads.bias.data(),
                                 params.bias.size())});
  r.slots = x.size() + params.weights.size() + params.bias.size();
  return r;
}

GradCheckResult gradcheck_batchnorm(uint64_t seed) {
  Rng rng(seed);
  Tensor<double> x(4, 2, 4, 4);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto params = BatchNormParams<double>::identity(2);
  fill_uniform(params.gamma, rng, 0.5, 1.5);
  fill_uniform(params.beta, rng, -0.5, 0.5);

  Tensor<double> proj(4, 2, 4, 4);
  fill_uniform(proj.v, rng, -1.0, 1.0);

  auto eval = [&]() {
    auto y = batchnorm_forward(x, params, Mode::Train);
    double s = 0.0;
    for (size_t i = 0; i < y.out.size(); ++i) s += y.out.v[i] * proj.v[i];
    return s;
  };
  auto fwd = batchnorm_forward(x, params, Mode::Train);
  auto grads = batchnorm_backward(x, fwd.cache, proj);

  GradCheckResult r{"batchnorm", 0.0, 0};
  r.max_rel_err = std::max(
      {finite_difference_max_err(eval, x.data(), grads.input.data(), x.size()),
       finite_difference_max_err(eval, params.gamma.data(), grads.gamma.data(),
                                 params.gamma.size()),
       finite_difference_max_err(eval, params.beta.data(), grads.beta.data(),
                                 params.beta.size())});
  r.slots = x.size() + params.gamma.size() + params.beta.size();
  return r;
}

GradCheckResult gradcheck_leaky_relu(uint64_t seed) {
  Rng rng(seed);
  Tensor<double> x(2, 3, 4, 4);
  fill_off_kink(x.v, rng, -1.0, 1.0);
  Tensor<double> proj(2, 3, 4, 4);
  fill_uniform(proj.v, rng, -1.0, 1.0);
  const double slope = 0.2;

  auto eval = [&]() {
    auto y = leaky_relu(x, slope);
    double s = 0.0;
    for (size_t i = 0; i < y.size(); ++i) s += y.v[i] * proj.v[i];
    return s;
  };
  auto gx = leaky_relu_backward(x, slope, proj);

  GradCheckResult r{"leaky_relu", 0.0, x.size()};
  r.max_rel_err = finite_difference_max_err(eval, x.data(), gx.data(), x.size());
  return r;
}

GradCheckResult gradcheck_bce(uint64_t seed) {
  Rng rng(seed);
  Tensor<double> z(4, 1, 1, 1);
  fill_uniform(z.v, rng, -2.0, 2.0);
  Tensor<double> labels(4, 1, 1, 1);
  for (auto& y : labels.v) y = static_cast<double>(rng.below(2));

  auto eval = [&]() { return bce_with_logits(z, labels).loss; };
  auto analytic = bce_with_logits(z, labels).grad_logits;

  GradCheckResult r{"bce", 0.0, z.size()};
  r.max_rel_err = finite_difference_max_err(eval, z.data(), analytic.data(), z.size());
  return r;
}

GradCheckResult gradcheck_network(uint64_t seed) {
  DiscriminatorConfig config;
  config.input_size = 32;
  config.widths = {4, 8, 8, 8};
  auto model = build<double>(config, seed);

  Rng rng(mix64(seed, 1));
  Tensor<double> x(2, 3, 32, 32);
  fill_uniform(x.v, rng, -1.0, 1.0);
  Tensor<double> labels(2, 1, 1, 1);
  labels.v = {1.0, 0.0};

  // Loss plus the side (sign) of every leaky-relu input. A slot whose +-h
  // stencil flips any side is straddling the kink; central differences do
  // not measure the defined one-sided derivative there, so it is skipped.
  auto eval_sides = [&](std::vector<uint8_t>* sides) {
    ForwardCache<double> c;
    auto logits = forward(model, x, Mode::Train, &c);
    if (sides) {
      sides->clear();
      for (const auto& act : c.act_inputs)
        for (double v : act.v) sides->push_back(v >= 0.0 ? 1 : 0);
    }
    Tensor<double> z(2, 1, 1, 1);
    z.v.assign(logits.begin(), logits.end());
    return bce_with_logits(z, labels).loss;
  };

  ForwardCache<double> cache;
  auto logits = forward(model, x, Mode::Train, &cache);
  Tensor<double> z(2, 1, 1, 1);
  z.v.assign(logits.begin(), logits.end());
  auto loss = bce_with_logits(z, labels);
  auto grads = backward(model, cache, loss.grad_logits.v);

  GradCheckResult r{"network", 0.0, 0, 0};
  const double step = 1e-5;
  std::vector<uint8_t> sides_p, sides_m;
  auto check_block = [&](double* slots, const double* analytic, size_t count) {
    for (size_t i = 0; i < count; ++i) {
      const double orig = slots[i];
      slots[i] = orig + step;
      const double fp = eval_sides(&sides_p);
      slots[i] = orig - step;
      const double fm = eval_sides(&sides_m);
      slots[i] = orig;
      ++r.slots;
      if (sides_p != sides_m) {
        ++r.slots_skipped;
        continue;
      }
      const double numeric = (fp - fm) / (2.0 * step);
      r.max_rel_err = std::max(r.max_rel_err, rel_err(analytic[i], numeric));
    }
  };

  auto pviews = model.param_views();
  auto gviews = grads.views();
  require(pviews.size() == gviews.size(), "config.state", "view count mismatch");
  for (size_t i = 0; i < pviews.size(); ++i) {
    require(pviews[i].size() == gviews[i].size(), "config.state", "view size mismatch");
    check_block(pviews[i].data(), gviews[i].data(), pviews[i].size());
  }
  check_block(x.data(), grads.input.data(), x.size());
  return r;
}

std::vector<GradCheckResult> gradcheck_suite(uint64_t seed) {
  return {gradcheck_conv(seed), gradcheck_batchnorm(seed), gradcheck_leaky_relu(seed),
          gradcheck_bce(seed), gradcheck_network(seed)};
}

double gradcheck_tolerance(const std::string& name) {
  return name == "network" ? 1e-3 : 1e-4;
}

}  // namespace ganfor
