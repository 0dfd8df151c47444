#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ganfor/activations.hpp"
#include "ganfor/batchnorm.hpp"
#include "ganfor/conv2d.hpp"
#include "ganfor/gradcheck.hpp"
#include "ganfor/loss.hpp"
#include "ganfor/rng.hpp"

using namespace ganfor;

namespace {

// Direct nested-loop correlation oracle. Same summation order as the
// library contract (bias first, then ci, kh, kw), written independently.
template <typename T>
Tensor<T> conv_oracle(const Tensor<T>& x, const ConvParams<T>& p) {
  const int k = p.kernel();
  const int oh = (x.h + 2 * p.pad - k) / p.stride + 1;
  const int ow = (x.w + 2 * p.pad - k) / p.stride + 1;
  Tensor<T> y(x.n, p.c_out(), oh, ow);
  for (int n = 0; n < x.n; ++n)
    for (int co = 0; co < p.c_out(); ++co)
      for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
          T acc = p.bias[co];
          for (int ci = 0; ci < x.c; ++ci)
            for (int a = 0; a < k; ++a)
              for (int b = 0; b < k; ++b) {
                const int yy = i * p.stride - p.pad + a;
                const int xx = j * p.stride - p.pad + b;
                if (yy < 0 || yy >= x.h || xx < 0 || xx >= x.w) continue;
                acc += p.weights.at(co, ci, a, b) * x.at(n, ci, yy, xx);
              }
          y.at(n, co, i, j) = acc;
        }
  return y;
}

template <typename T>
void fill_uniform(std::vector<T>& v, Rng& rng, double lo, double hi) {
  for (auto& x : v) x = static_cast<T>(rng.uniform(lo, hi));
}

}  // namespace

TEST_CASE("conv2d forward shape for the 128-input first stage") {
  Tensor<float> x(1, 3, 128, 128);
  auto p = make_conv_params<float>(64, 3, 4, 2, 1);
  auto y = conv2d_forward(x, p);
  CHECK(y.n == 1);
  CHECK(y.c == 64);
  CHECK(y.h == 64);
  CHECK(y.w == 64);
}

TEST_CASE("conv2d with zero weights emits per-channel bias") {
  Rng rng(11);
  Tensor<float> x(2, 3, 8, 8);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto p = make_conv_params<float>(4, 3, 4, 2, 1);
  p.bias = {0.5f, -1.25f, 2.0f, 0.0f};
  auto y = conv2d_forward(x, p);
  for (int n = 0; n < y.n; ++n)
    for (int c = 0; c < y.c; ++c)
      for (int i = 0; i < y.h; ++i)
        for (int j = 0; j < y.w; ++j) CHECK(y.at(n, c, i, j) == p.bias[c]);
}

TEST_CASE("conv2d counting input against hand-derived values and the oracle") {
  Tensor<double> x(1, 1, 4, 4);
  for (int i = 0; i < 16; ++i) x.v[i] = i;
  auto p = make_conv_params<double>(1, 1, 4, 2, 1);
  for (auto& w : p.weights.v) w = 1.0;

  auto y = conv2d_forward(x, p);
  REQUIRE(y.h == 2);
  REQUIRE(y.w == 2);
  CHECK(y.at(0, 0, 0, 0) == 45.0);
  CHECK(y.at(0, 0, 0, 1) == 54.0);
  CHECK(y.at(0, 0, 1, 0) == 81.0);
  CHECK(y.at(0, 0, 1, 1) == 90.0);

  auto o = conv_oracle(x, p);
  for (size_t i = 0; i < y.size(); ++i) CHECK(y.v[i] == o.v[i]);
}

TEST_CASE("conv2d forward matches the nested-loop oracle exactly, 100 random trials") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(2));
    const int ci = 1 + static_cast<int>(rng.below(3));
    const int h = 4 + static_cast<int>(rng.below(5));
    const int w = 4 + static_cast<int>(rng.below(5));
    const int co = 1 + static_cast<int>(rng.below(4));
    const int k = rng.below(2) ? 4 : 3;
    const int stride = 1 + static_cast<int>(rng.below(2));
    const int pad = static_cast<int>(rng.below(2));

    Tensor<float> x(n, ci, h, w);
    fill_uniform(x.v, rng, -2.0, 2.0);
    auto p = make_conv_params<float>(co, ci, k, stride, pad);
    fill_uniform(p.weights.v, rng, -1.0, 1.0);
    fill_uniform(p.bias, rng, -1.0, 1.0);

    auto y = conv2d_forward(x, p);
    auto o = conv_oracle(x, p);
    REQUIRE(y.size() == o.size());
    for (size_t i = 0; i < y.size(); ++i) REQUIRE(y.v[i] == o.v[i]);
  }
}

TEST_CASE("conv2d rejects channel mismatch naming both shapes") {
  Tensor<float> x(1, 2, 8, 8);
  auto p = make_conv_params<float>(4, 3, 4, 2, 1);
  try {
    conv2d_forward(x, p);
    FAIL("expected config.shape error");
  } catch (const Error& e) {
    CHECK(e.category() == "config.shape");
    CHECK(std::string(e.what()).find("(1,2,8,8)") != std::string::npos);
    CHECK(std::string(e.what()).find("(4,3,4,4)") != std::string::npos);
  }
}

TEST_CASE("conv2d backward: zero grad_out gives zero gradients") {
  Rng rng(5);
  Tensor<float> x(2, 3, 8, 8);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto p = make_conv_params<float>(4, 3, 4, 2, 1);
  fill_uniform(p.weights.v, rng, -1.0, 1.0);
  Tensor<float> gy(2, 4, 4, 4);
  auto g = conv2d_backward(x, p, gy);
  for (auto v : g.input.v) CHECK(v == 0.0f);
  for (auto v : g.weights.v) CHECK(v == 0.0f);
  for (auto v : g.bias) CHECK(v == 0.0f);
}

TEST_CASE("conv2d backward: unit grad at one output recovers the input patch") {
  Rng rng(7);
  Tensor<double> x(1, 1, 8, 8);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto p = make_conv_params<double>(1, 1, 4, 2, 1);
  fill_uniform(p.weights.v, rng, -1.0, 1.0);

  // Interior output position (1,1): window rows/cols 1..4, fully in range.
  Tensor<double> gy(1, 1, 4, 4);
  gy.at(0, 0, 1, 1) = 1.0;
  auto g = conv2d_backward(x, p, gy);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(g.weights.at(0, 0, a, b) == x.at(0, 0, 1 + a, 1 + b));
  CHECK(g.bias[0] == 1.0);
}

TEST_CASE("conv2d backward grad_bias sums grad_out per channel") {
  Rng rng(9);
  Tensor<double> x(2, 2, 6, 6);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto p = make_conv_params<double>(3, 2, 4, 2, 1);
  fill_uniform(p.weights.v, rng, -1.0, 1.0);
  Tensor<double> gy(2, 3, 3, 3);
  fill_uniform(gy.v, rng, -1.0, 1.0);
  auto g = conv2d_backward(x, p, gy);
  for (int c = 0; c < 3; ++c) {
    double want = 0.0;
    for (int n = 0; n < 2; ++n)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) want += gy.at(n, c, i, j);
    CHECK(g.bias[c] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("batchnorm train on constant input returns zeros") {
  Tensor<float> x(2, 3, 4, 4);
  for (auto& v : x.v) v = 7.5f;
  auto p = BatchNormParams<float>::identity(3);
  auto r = batchnorm_forward(x, p, Mode::Train);
  for (auto v : r.out.v) CHECK(std::abs(v) < 1e-5f);
}

TEST_CASE("batchnorm train on +-1 input gives +-1/sqrt(1+eps)") {
  Tensor<double> x(2, 1, 2, 2);
  x.v = {-1, 1, -1, 1, 1, -1, 1, -1};
  auto p = BatchNormParams<double>::identity(1);
  auto r = batchnorm_forward(x, p, Mode::Train);
  const double want = 1.0 / std::sqrt(1.0 + p.epsilon);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(r.out.v[i] == doctest::Approx(x.v[i] * want).epsilon(1e-12));
}

TEST_CASE("batchnorm infer applies the affine form of the running stats") {
  Rng rng(3);
  Tensor<double> x(2, 2, 3, 3);
  fill_uniform(x.v, rng, -2.0, 2.0);
  auto p = BatchNormParams<double>::identity(2);
  p.gamma = {2.0, 2.0};
  p.beta = {3.0, 3.0};
  auto r = batchnorm_forward(x, p, Mode::Infer);
  const double inv = 1.0 / std::sqrt(1.0 + p.epsilon);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(r.out.v[i] == doctest::Approx(2.0 * x.v[i] * inv + 3.0).epsilon(1e-12));
  // Running stats unchanged by infer mode.
  CHECK(r.new_running_mean == p.running_mean);
  CHECK(r.new_running_var == p.running_var);
}

TEST_CASE("batchnorm train rejects a single spatial-batch element") {
  Tensor<float> x(1, 2, 1, 1);
  auto p = BatchNormParams<float>::identity(2);
  CHECK_THROWS_AS(batchnorm_forward(x, p, Mode::Train), Error);
}

TEST_CASE("batchnorm backward requires a train-mode cache") {
  Tensor<float> x(2, 2, 2, 2);
  BatchNormCache<float> cache;  // never filled
  Tensor<float> gy(2, 2, 2, 2);
  try {
    batchnorm_backward(x, cache, gy);
    FAIL("expected config.state error");
  } catch (const Error& e) {
    CHECK(e.category() == "config.state");
  }
}

TEST_CASE("batchnorm backward: zero grad_out, and grad_beta equals per-channel sum") {
  Rng rng(17);
  Tensor<double> x(3, 2, 4, 4);
  fill_uniform(x.v, rng, -1.0, 1.0);
  auto p = BatchNormParams<double>::identity(2);
  auto fwd = batchnorm_forward(x, p, Mode::Train);

  Tensor<double> zero(3, 2, 4, 4);
  auto g0 = batchnorm_backward(x, fwd.cache, zero);
  for (auto v : g0.input.v) CHECK(v == 0.0);
  for (auto v : g0.gamma) CHECK(v == 0.0);
  for (auto v : g0.beta) CHECK(v == 0.0);

  Tensor<double> gy(3, 2, 4, 4);
  fill_uniform(gy.v, rng, -1.0, 1.0);
  auto g = batchnorm_backward(x, fwd.cache, gy);
  for (int c = 0; c < 2; ++c) {
    double want = 0.0;
    for (int n = 0; n < 3; ++n)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) want += gy.at(n, c, i, j);
    CHECK(g.beta[c] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("batchnorm train output is standardized per channel") {
  Rng rng(23);
  Tensor<double> x(4, 3, 4, 4);
  fill_uniform(x.v, rng, -3.0, 3.0);
  auto p = BatchNormParams<double>::identity(3);
  auto r = batchnorm_forward(x, p, Mode::Train);
  const double m = 4.0 * 4.0 * 4.0;
  for (int c = 0; c < 3; ++c) {
    double mean = 0.0, var = 0.0;
    for (int n = 0; n < 4; ++n)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mean += r.out.at(n, c, i, j);
    mean /= m;
    for (int n = 0; n < 4; ++n)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double d = r.out.at(n, c, i, j) - mean;
          var += d * d;
        }
    var /= m;
    CHECK(std::abs(mean) < 1e-5);
    // Output variance is var/(var+eps), just below 1.
    CHECK(var == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(var <= 1.0 + 1e-12);
  }
}

TEST_CASE("batchnorm running stats follow the momentum update") {
  Tensor<double> x(2, 1, 2, 2);
  x.v = {1, 3, 1, 3, 5, 7, 5, 7};
  auto p = BatchNormParams<double>::identity(1);
  p.running_mean = {10.0};
  p.running_var = {2.0};
  auto r = batchnorm_forward(x, p, Mode::Train);
  const double mean = (1 + 3 + 1 + 3 + 5 + 7 + 5 + 7) / 8.0;  // 4
  double var = 0.0;
  for (double v : {1, 3, 1, 3, 5, 7, 5, 7}) var += (v - mean) * (v - mean);
  var /= 8.0;  // biased, divisor N*H*W
  CHECK(r.new_running_mean[0] == doctest::Approx(0.9 * 10.0 + 0.1 * mean).epsilon(1e-12));
  CHECK(r.new_running_var[0] == doctest::Approx(0.9 * 2.0 + 0.1 * var).epsilon(1e-12));
  CHECK(r.new_running_var[0] >= 0.0);
}

TEST_CASE("leaky_relu examples") {
  Tensor<float> x(1, 1, 1, 4);
  x.v = {2.0f, -2.0f, 0.0f, -5.0f};
  auto y = leaky_relu(x, 0.2f);
  CHECK(y.v[0] == 2.0f);
  CHECK(y.v[1] == doctest::Approx(-0.4f));
  CHECK(y.v[2] == 0.0f);

  // Slope 0 reduces to plain relu.
  auto relu = leaky_relu(x, 0.0f);
  CHECK(relu.v[3] == 0.0f);

  Tensor<float> gy(1, 1, 1, 4);
  gy.v = {1.0f, 1.0f, 1.0f, 1.0f};
  auto gx = leaky_relu_backward(x, 0.2f, gy);
  CHECK(gx.v[0] == 1.0f);
  CHECK(gx.v[1] == doctest::Approx(0.2f));
  CHECK(gx.v[2] == 1.0f);  // derivative at exactly 0 is 1
}

TEST_CASE("leaky_relu is idempotent on non-negative input and monotone") {
  Rng rng(31);
  Tensor<double> x(2, 2, 4, 4);
  fill_uniform(x.v, rng, 0.0, 5.0);
  auto once = leaky_relu(x, 0.2);
  auto twice = leaky_relu(once, 0.2);
  for (size_t i = 0; i < x.size(); ++i) {
    CHECK(once.v[i] == x.v[i]);
    CHECK(twice.v[i] == once.v[i]);
  }

  Tensor<double> a(1, 1, 1, 64), b(1, 1, 1, 64);
  fill_uniform(a.v, rng, -4.0, 4.0);
  for (int i = 0; i < 64; ++i) b.v[i] = a.v[i] + rng.uniform(0.0, 2.0);
  auto fa = leaky_relu(a, 0.2);
  auto fb = leaky_relu(b, 0.2);
  for (int i = 0; i < 64; ++i) CHECK(fb.v[i] >= fa.v[i]);
}

TEST_CASE("leaky_relu rejects slope outside [0,1)") {
  Tensor<float> x(1, 1, 1, 1);
  CHECK_THROWS_AS(leaky_relu(x, 1.0f), Error);
  CHECK_THROWS_AS(leaky_relu(x, -0.1f), Error);
}

TEST_CASE("bce_with_logits examples") {
  Tensor<double> z(1, 1, 1, 1), y(1, 1, 1, 1);
  z.v = {0.0};
  y.v = {0.0};
  auto r0 = bce_with_logits(z, y);
  CHECK(r0.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  y.v = {1.0};
  auto r1 = bce_with_logits(z, y);
  CHECK(r1.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(r1.grad_logits.v[0] == doctest::Approx(-0.5).epsilon(1e-12));

  z.v = {-100.0};
  y.v = {0.0};
  auto r2 = bce_with_logits(z, y);
  CHECK(std::isfinite(r2.loss));
  CHECK(r2.loss >= 0.0);
  CHECK(r2.loss < 1e-20);
}

TEST_CASE("bce_with_logits stays finite at |z| = 1e4") {
  Tensor<double> z(2, 1, 1, 1), y(2, 1, 1, 1);
  z.v = {1e4, -1e4};
  y.v = {0.0, 1.0};
  auto r = bce_with_logits(z, y);
  CHECK(std::isfinite(r.loss));
  CHECK(r.loss == doctest::Approx(1e4).epsilon(1e-9));
  for (auto g : r.grad_logits.v) CHECK(std::isfinite(g));
}

TEST_CASE("bce_with_logits rejects non-binary labels") {
  Tensor<float> z(1, 1, 1, 1), y(1, 1, 1, 1);
  y.v = {0.5f};
  try {
    bce_with_logits(z, y);
    FAIL("expected config.label error");
  } catch (const Error& e) {
    CHECK(e.category() == "config.label");
  }
}

TEST_CASE("bce_with_logits loss is non-negative on random instances") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    Tensor<double> z(4, 1, 1, 1), y(4, 1, 1, 1);
    fill_uniform(z.v, rng, -30.0, 30.0);
    for (auto& l : y.v) l = static_cast<double>(rng.below(2));
    CHECK(bce_with_logits(z, y).loss >= 0.0);
  }
}

TEST_CASE("adjoint property: conv2d forward/backward pair") {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int ci = 1 + static_cast<int>(rng.below(4));
    const int hw = 5 + static_cast<int>(rng.below(4));
    Tensor<double> x(n, ci, hw, hw);
    fill_uniform(x.v, rng, -1.0, 1.0);
    auto p = make_conv_params<double>(1 + static_cast<int>(rng.below(3)), ci, 4, 2, 1);
    fill_uniform(p.weights.v, rng, -1.0, 1.0);

    Tensor<double> dx(n, ci, hw, hw);
    fill_uniform(dx.v, rng, -1.0, 1.0);
    const auto d = conv2d_dims(x, p);
    Tensor<double> dy(d.n, d.c_out, d.out_h, d.out_w);
    fill_uniform(dy.v, rng, -1.0, 1.0);

    // Linearity in the input: J*dx is the forward map of dx with zero bias.
    auto pz = p;
    for (auto& b : pz.bias) b = 0.0;
    auto jdx = conv2d_forward(dx, pz);
    double lhs = 0.0;
    for (size_t i = 0; i < jdx.size(); ++i) lhs += jdx.v[i] * dy.v[i];

    auto g = conv2d_backward(x, p, dy);
    double rhs = 0.0;
    for (size_t i = 0; i < dx.size(); ++i) rhs += dx.v[i] * g.input.v[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("adjoint property: batchnorm via directional derivative") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor<double> x(4, 2, 4, 4);
    fill_uniform(x.v, rng, -1.0, 1.0);
    auto p = BatchNormParams<double>::identity(2);
    fill_uniform(p.gamma, rng, 0.5, 1.5);

    Tensor<double> dx(4, 2, 4, 4), dy(4, 2, 4, 4);
    fill_uniform(dx.v, rng, -1.0, 1.0);
    fill_uniform(dy.v, rng, -1.0, 1.0);

    const double h = 1e-6;
    Tensor<double> xp = x, xm = x;
    for (size_t i = 0; i < x.size(); ++i) {
      xp.v[i] += h * dx.v[i];
      xm.v[i] -= h * dx.v[i];
    }
    auto yp = batchnorm_forward(xp, p, Mode::Train);
    auto ym = batchnorm_forward(xm, p, Mode::Train);
    double lhs = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      lhs += (yp.out.v[i] - ym.out.v[i]) / (2.0 * h) * dy.v[i];

    auto fwd = batchnorm_forward(x, p, Mode::Train);
    auto g = batchnorm_backward(x, fwd.cache, dy);
    double rhs = 0.0;
    for (size_t i = 0; i < x.size(); ++i) rhs += dx.v[i] * g.input.v[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("gradcheck: conv and batchnorm under 1e-4, network under 1e-3") {
  auto suite = gradcheck_suite(424242);
  REQUIRE(suite.size() == 5);
  for (const auto& r : suite) {
    INFO(r.name, " max_rel_err=", r.max_rel_err);
    CHECK(r.max_rel_err < gradcheck_tolerance(r.name));
  }
}

TEST_CASE("gradcheck flags a broken gradient (sign flip fixture)") {
  Rng rng(71);
  std::vector<double> x(8);
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  auto eval = [&]() {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  std::vector<double> wrong(8);
  for (size_t i = 0; i < 8; ++i) wrong[i] = -2.0 * x[i];  // sign flipped
  const double err = finite_difference_max_err(eval, x.data(), wrong.data(), 8);
  CHECK(err > 0.5);
}
