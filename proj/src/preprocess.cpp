#include "ganfor/preprocess.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "ganfor/error.hpp"

namespace ganfor {

namespace {
std::atomic<uint64_t> g_apply_count{0};

// Mirror without repeating the border pixel: -1 -> 1, n -> n-2.
inline int reflect(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
  }
  return i;
}
}  // namespace

const char* preprocess_mode_name(PreprocessMode m) {
  switch (m) {
    case PreprocessMode::None: return "none";
    case PreprocessMode::Blur: return "blur";
    case PreprocessMode::Noise: return "noise";
  }
  return "none";
}

PreprocessMode preprocess_mode_from_name(const std::string& name) {
  if (name == "none") return PreprocessMode::None;
  if (name == "blur") return PreprocessMode::Blur;
  if (name == "noise") return PreprocessMode::Noise;
  fail("config.value", "unknown preprocess mode '" + name + "' (none|blur|noise)");
}

std::vector<double> gaussian_kernel_1d(int k, double sigma) {
  require(k >= 1 && k % 2 == 1, "config.value",
          "gaussian kernel size must be odd and >= 1, got " + std::to_string(k));
  require(sigma > 0.0, "config.value", "gaussian sigma must be positive");
  std::vector<double> taps(k);
  const int r = k / 2;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double x = i - r;
    taps[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += taps[i];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

double blur_sigma_for_kernel(int k) { return 0.3 * ((k - 1) / 2 - 1) + 0.8; }

Image separable_gaussian(const Image& img, int k, double sigma) {
  if (k == 1) return img;
  const auto taps = gaussian_kernel_1d(k, sigma);
  const int r = k / 2;

  // Horizontal pass, then vertical; accumulation in double.
  Image tmp(img.h, img.w, img.c);
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x)
      for (int ch = 0; ch < img.c; ++ch) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i)
          acc += taps[i] * img.at(y, reflect(x + i - r, img.w), ch);
        tmp.at(y, x, ch) = static_cast<float>(acc);
      }
  Image out(img.h, img.w, img.c);
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x)
      for (int ch = 0; ch < img.c; ++ch) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i)
          acc += taps[i] * tmp.at(reflect(y + i - r, img.h), x, ch);
        out.at(y, x, ch) = static_cast<float>(acc);
      }
  return out;
}

Image gaussian_blur(const Image& img, int k) {
  g_apply_count.fetch_add(1, std::memory_order_relaxed);
  require(k == 1 || k == 3 || k == 5 || k == 7, "config.value",
          "blur kernel size must be one of {1,3,5,7}, got " + std::to_string(k));
  if (k == 1) return img;
  Image out = separable_gaussian(img, k, blur_sigma_for_kernel(k));
  // Convex tap weights keep values in range; clamp only absorbs float
  // round-off at the extremes.
  for (auto& v : out.px) v = std::min(255.0f, std::max(0.0f, v));
  return out;
}

Image add_gaussian_noise(const Image& img, double std, Rng& rng) {
  g_apply_count.fetch_add(1, std::memory_order_relaxed);
  require(std >= 0.0 && std <= 5.0, "config.value",
          "noise std must be in [0,5], got " + std::to_string(std));
  if (std == 0.0) return img;
  Image out = img;
  for (auto& v : out.px) {
    const double noisy = v + rng.normal(0.0, std);
    v = static_cast<float>(std::min(255.0, std::max(0.0, noisy)));
  }
  return out;
}

PreprocessDraw draw_batch_preprocessing(PreprocessMode mode, Rng& rng) {
  PreprocessDraw d;
  d.mode = mode;
  d.rng_stream = rng.root_seed();
  switch (mode) {
    case PreprocessMode::None:
      break;
    case PreprocessMode::Blur: {
      static const int sizes[4] = {1, 3, 5, 7};
      d.kernel_size = sizes[rng.below(4)];
      break;
    }
    case PreprocessMode::Noise:
      d.noise_std = rng.uniform(0.0, 5.0);
      break;
  }
  return d;
}

void apply(const PreprocessDraw& draw, std::vector<Image>& batch, const Rng& noise_base) {
  g_apply_count.fetch_add(1, std::memory_order_relaxed);
  switch (draw.mode) {
    case PreprocessMode::None:
      return;
    case PreprocessMode::Blur:
      for (auto& img : batch) img = gaussian_blur(img, draw.kernel_size);
      return;
    case PreprocessMode::Noise:
      for (size_t i = 0; i < batch.size(); ++i) {
        Rng stream = noise_base.child(i);
        batch[i] = add_gaussian_noise(batch[i], draw.noise_std, stream);
      }
      return;
  }
}

uint64_t preprocess_apply_count() { return g_apply_count.load(std::memory_order_relaxed); }
void reset_preprocess_apply_count() { g_apply_count.store(0, std::memory_order_relaxed); }

}  // namespace ganfor
