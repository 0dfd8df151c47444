#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ganfor/image.hpp"
#include "ganfor/rng.hpp"

namespace ganfor {

// Training-time augmentation: Gaussian blur with kernel size drawn from
// {1,3,5,7}, or additive Gaussian noise with std drawn uniformly from
// [0,5] (in 0-255 pixel units). One draw per batch; every image in the
// batch gets the same realized parameter. Evaluation never applies any of
// this. Blur k=1 and noise std=0 are bit-exact identities.
enum class PreprocessMode { None, Blur, Noise };

const char* preprocess_mode_name(PreprocessMode m);
PreprocessMode preprocess_mode_from_name(const std::string& name);

struct PreprocessDraw {
  PreprocessMode mode = PreprocessMode::None;
  int kernel_size = 1;     // Blur
  double noise_std = 0.0;  // Noise
  uint64_t rng_stream = 0; // seed lineage of the per-image noise streams
};

// Samples of exp(-x^2 / 2 sigma^2) at integer offsets centered on 0,
// normalized to unit sum. k must be odd and >= 1.
std::vector<double> gaussian_kernel_1d(int k, double sigma);

// sigma(k) = 0.3*((k-1)/2 - 1) + 0.8, the usual auto-sigma rule.
double blur_sigma_for_kernel(int k);

// Separable horizontal-then-vertical blur per channel with mirrored
// (non-repeating) borders. k must be one of {1,3,5,7}.
Image gaussian_blur(const Image& img, int k);

// Internal helper exposed for the synthetic generator: separable blur with
// an arbitrary odd kernel and sigma.
Image separable_gaussian(const Image& img, int k, double sigma);

// Adds i.i.d. N(0, std^2) to every channel of every pixel, clamps to
// [0,255]. std must be in [0,5].
Image add_gaussian_noise(const Image& img, double std, Rng& rng);

PreprocessDraw draw_batch_preprocessing(PreprocessMode mode, Rng& rng);

// Applies the draw to every image; noise uses one child stream per image
// index so per-image work can be reordered without changing results.
void apply(const PreprocessDraw& draw, std::vector<Image>& batch, const Rng& noise_base);

// Entry-point call counter (diagnostic; lets tests prove the evaluation
// path never touches preprocessing).
uint64_t preprocess_apply_count();
void reset_preprocess_apply_count();

}  // namespace ganfor
