#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "ganfor/kernels.hpp"
#include "ganfor/kernels_avx2.hpp"
#include "ganfor/kernels_ref.hpp"
#include "ganfor/rng.hpp"

using namespace ganfor;
using kernels::ConvDims;

namespace {

void fill(std::vector<float>& v, Rng& rng, double lo = -2.0, double hi = 2.0) {
  for (auto& x : v) x = static_cast<float>(rng.uniform(lo, hi));
}

ConvDims dims(int n, int ci, int h, int w, int co, int k, int s, int p) {
  ConvDims d;
  d.n = n;
  d.c_in = ci;
  d.h = h;
  d.w = w;
  d.c_out = co;
  d.k = k;
  d.stride = s;
  d.pad = p;
  d.out_h = (h + 2 * p - k) / s + 1;
  d.out_w = (w + 2 * p - k) / s + 1;
  return d;
}

bool bit_equal(const std::vector<float>& a, const std::vector<float>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

}  // namespace

TEST_CASE("backend api reports a valid active backend") {
  auto b = kernels::active_backend();
  CHECK((b == kernels::Backend::Scalar || b == kernels::Backend::Avx2));
  CHECK(std::string(kernels::backend_name(kernels::Backend::Scalar)) == "scalar");
  if (b == kernels::Backend::Avx2) CHECK(kernels::cpu_has_avx2());
}

#ifdef GANFOR_HAVE_AVX2

TEST_CASE("avx2 conv kernels are bit-identical to the scalar reference") {
  if (!kernels::cpu_has_avx2()) return;
  Rng rng(90210);
  // Layer geometries from the discriminator plus randomized odd sizes.
  std::vector<ConvDims> cases = {
      dims(2, 3, 16, 16, 4, 4, 2, 1),  dims(1, 4, 9, 13, 3, 4, 2, 1),
      dims(3, 2, 8, 8, 5, 3, 1, 1),    dims(1, 8, 8, 8, 1, 8, 1, 0),
      dims(2, 3, 128, 128, 4, 4, 2, 1)};
  for (int t = 0; t < 20; ++t) {
    const int k = rng.below(2) ? 4 : 3;
    cases.push_back(dims(1 + static_cast<int>(rng.below(2)),
                         1 + static_cast<int>(rng.below(5)),
                         4 + static_cast<int>(rng.below(13)),
                         4 + static_cast<int>(rng.below(13)),
                         1 + static_cast<int>(rng.below(6)), k,
                         1 + static_cast<int>(rng.below(2)),
                         static_cast<int>(rng.below(2))));
  }

  for (const auto& d : cases) {
    REQUIRE(d.out_h >= 1);
    REQUIRE(d.out_w >= 1);
    std::vector<float> x(static_cast<size_t>(d.n) * d.c_in * d.h * d.w);
    std::vector<float> w(static_cast<size_t>(d.c_out) * d.c_in * d.k * d.k);
    std::vector<float> b(d.c_out);
    std::vector<float> gy(static_cast<size_t>(d.n) * d.c_out * d.out_h * d.out_w);
    fill(x, rng);
    fill(w, rng);
    fill(b, rng);
    fill(gy, rng);

    std::vector<float> y_ref(gy.size()), y_simd(gy.size());
    kernels::ref::conv2d_forward(x.data(), w.data(), b.data(), y_ref.data(), d);
    kernels::avx2::conv2d_forward(x.data(), w.data(), b.data(), y_simd.data(), d);
    CHECK(bit_equal(y_ref, y_simd));

    std::vector<float> gw_ref(w.size()), gw_simd(w.size());
    kernels::ref::conv2d_grad_weights(x.data(), gy.data(), gw_ref.data(), d);
    kernels::avx2::conv2d_grad_weights(x.data(), gy.data(), gw_simd.data(), d);
    CHECK(bit_equal(gw_ref, gw_simd));

    std::vector<float> gx_ref(x.size()), gx_simd(x.size());
    kernels::ref::conv2d_grad_input(w.data(), gy.data(), gx_ref.data(), d);
    kernels::avx2::conv2d_grad_input(w.data(), gy.data(), gx_simd.data(), d);
    CHECK(bit_equal(gx_ref, gx_simd));
  }
}

TEST_CASE("avx2 elementwise kernels are bit-identical to the scalar reference") {
  if (!kernels::cpu_has_avx2()) return;
  Rng rng(777);
  for (size_t count : {1ul, 7ul, 8ul, 9ul, 64ul, 1001ul}) {
    std::vector<float> x(count), gy(count);
    fill(x, rng, -3.0, 3.0);
    fill(gy, rng, -3.0, 3.0);

    std::vector<float> a(count), b(count);
    kernels::ref::leaky_relu_forward(x.data(), a.data(), count, 0.2f);
    kernels::avx2::leaky_relu_forward(x.data(), b.data(), count, 0.2f);
    CHECK(bit_equal(a, b));

    kernels::ref::leaky_relu_backward(x.data(), gy.data(), a.data(), count, 0.2f);
    kernels::avx2::leaky_relu_backward(x.data(), gy.data(), b.data(), count, 0.2f);
    CHECK(bit_equal(a, b));

    kernels::ref::scale_shift(x.data(), a.data(), count, 1.0f / 127.5f, -1.0f);
    kernels::avx2::scale_shift(x.data(), b.data(), count, 1.0f / 127.5f, -1.0f);
    CHECK(bit_equal(a, b));
  }
}

TEST_CASE("avx2 adam step is bit-identical to the scalar reference over steps") {
  if (!kernels::cpu_has_avx2()) return;
  Rng rng(31337);
  const size_t count = 531;
  std::vector<float> p1(count), m1(count, 0.0f), v1(count, 0.0f);
  fill(p1, rng);
  auto p2 = p1;
  auto m2 = m1;
  auto v2 = v1;

  for (int t = 1; t <= 5; ++t) {
    std::vector<float> g(count);
    fill(g, rng, -0.5, 0.5);
    const float c1 = static_cast<float>(1.0 / (1.0 - std::pow(0.5, t)));
    const float c2 = static_cast<float>(1.0 / (1.0 - std::pow(0.999, t)));
    kernels::ref::adam_step(p1.data(), g.data(), m1.data(), v1.data(), count, 2e-4f,
                            0.5f, 0.999f, c1, c2, 1e-8f);
    kernels::avx2::adam_step(p2.data(), g.data(), m2.data(), v2.data(), count, 2e-4f,
                             0.5f, 0.999f, c1, c2, 1e-8f);
    CHECK(bit_equal(p1, p2));
    CHECK(bit_equal(m1, m2));
    CHECK(bit_equal(v1, v2));
  }
}

#endif  // GANFOR_HAVE_AVX2
