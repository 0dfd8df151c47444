#pragma once

#include <cstdint>
#include <vector>

#include "ganfor/tensor.hpp"

namespace ganfor {

// Interleaved H x W x C pixel array with values in [0,255]. Stored as
// float so resized and preprocessed images keep fractional values; decoded
// 8-bit content is represented exactly.
struct Image {
  int h = 0, w = 0, c = 0;
  std::vector<float> px;

  Image() = default;
  Image(int h_, int w_, int c_)
      : h(h_), w(w_), c(c_), px(static_cast<size_t>(h_) * w_ * c_, 0.0f) {}

  size_t size() const { return px.size(); }
  float& at(int y, int x, int ch) { return px[(static_cast<size_t>(y) * w + x) * c + ch]; }
  const float& at(int y, int x, int ch) const {
    return px[(static_cast<size_t>(y) * w + x) * c + ch];
  }
};

// 8-bit storage form (decoded files, synthetic datasets).
struct Pixels8 {
  int h = 0, w = 0, c = 0;
  std::vector<uint8_t> px;
};

Image to_image(const Pixels8& p);
// Rounds to nearest and clamps to [0,255].
Pixels8 quantize(const Image& img);

// Bilinear resize with half-pixel-center alignment; bit-exact no-op when
// the source already has the target size.
Image resize_bilinear(const Image& img, int out_h, int out_w);

// x -> x/127.5 - 1 into an NCHW tensor slice, and its inverse.
Tensor<float> images_to_tensor(const std::vector<Image>& batch);
Image tensor_slice_to_image(const Tensor<float>& t, int n);

float image_mean(const Image& img);
float image_variance(const Image& img);

}  // namespace ganfor
