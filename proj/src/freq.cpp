#include "ganfor/freq.hpp"

#include <cmath>
#include <vector>

#include "ganfor/error.hpp"

namespace ganfor {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

struct Twiddle {
  std::vector<double> cos_t, sin_t;  // index k*n mod N
  int n;
  explicit Twiddle(int size) : cos_t(size), sin_t(size), n(size) {
    for (int i = 0; i < size; ++i) {
      cos_t[i] = std::cos(kTwoPi * i / size);
      sin_t[i] = std::sin(kTwoPi * i / size);
    }
  }
};
}  // namespace

double band_energy(const Image& img, double f_lo, double f_hi) {
  require(img.h > 0 && img.w > 0 && img.c > 0, "config.shape", "band_energy on empty image");
  require(f_lo >= 0.0 && f_hi <= 0.5 + 1e-12 && f_lo <= f_hi, "config.value",
          "band must satisfy 0 <= lo <= hi <= 0.5");
  const int H = img.h, W = img.w;
  Twiddle th(H), tw(W);

  double total = 0.0;
  std::vector<double> g_re(static_cast<size_t>(H) * W), g_im(static_cast<size_t>(H) * W);
  for (int ch = 0; ch < img.c; ++ch) {
    // Column DFTs: G(u,x) = sum_y f(y,x) e^{-2pi i u y / H}
    for (int u = 0; u < H; ++u)
      for (int x = 0; x < W; ++x) {
        double re = 0.0, im = 0.0;
        for (int y = 0; y < H; ++y) {
          const double v = img.at(y, x, ch);
          const int k = static_cast<int>((static_cast<long long>(u) * y) % H);
          re += v * th.cos_t[k];
          im -= v * th.sin_t[k];
        }
        g_re[static_cast<size_t>(u) * W + x] = re;
        g_im[static_cast<size_t>(u) * W + x] = im;
      }
    // Row DFTs and band accumulation.
    for (int u = 0; u < H; ++u) {
      const double fy = static_cast<double>(std::min(u, H - u)) / H;
      for (int v = 0; v < W; ++v) {
        const double fx = static_cast<double>(std::min(v, W - v)) / W;
        const double r = std::max(fy, fx);
        if (r < f_lo || r > f_hi) continue;
        double re = 0.0, im = 0.0;
        for (int x = 0; x < W; ++x) {
          const double a = g_re[static_cast<size_t>(u) * W + x];
          const double b = g_im[static_cast<size_t>(u) * W + x];
          const int k = static_cast<int>((static_cast<long long>(v) * x) % W);
          const double c = tw.cos_t[k];
          const double s = tw.sin_t[k];
          re += a * c + b * s;
          im += b * c - a * s;
        }
        total += re * re + im * im;
      }
    }
  }
  const double hw = static_cast<double>(H) * W;
  return total / (hw * hw * img.c);
}

}  // namespace ganfor
