#include "ganfor/image.hpp"

#include <algorithm>
#include <cmath>

#include "ganfor/kernels.hpp"

namespace ganfor {

Image to_image(const Pixels8& p) {
  Image img(p.h, p.w, p.c);
  for (size_t i = 0; i < p.px.size(); ++i) img.px[i] = static_cast<float>(p.px[i]);
  return img;
}

Pixels8 quantize(const Image& img) {
  Pixels8 p;
  p.h = img.h;
  p.w = img.w;
  p.c = img.c;
  p.px.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) {
    const float v = std::min(255.0f, std::max(0.0f, std::round(img.px[i])));
    p.px[i] = static_cast<uint8_t>(v);
  }
  return p;
}

Image resize_bilinear(const Image& img, int out_h, int out_w) {
  require(img.h >= 1 && img.w >= 1 && img.c >= 1, "config.shape",
          "resize of an empty image");
  require(out_h >= 1 && out_w >= 1, "config.shape", "resize target must be positive");
  if (img.h == out_h && img.w == out_w) return img;

  Image out(out_h, out_w, img.c);
  const double sy = static_cast<double>(img.h) / out_h;
  const double sx = static_cast<double>(img.w) / out_w;
  for (int y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::min(std::max(fy, 0.0), static_cast<double>(img.h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.h - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::min(std::max(fx, 0.0), static_cast<double>(img.w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.w - 1);
      const double wx = fx - x0;
      for (int ch = 0; ch < img.c; ++ch) {
        const double top = (1.0 - wx) * img.at(y0, x0, ch) + wx * img.at(y0, x1, ch);
        const double bot = (1.0 - wx) * img.at(y1, x0, ch) + wx * img.at(y1, x1, ch);
        out.at(y, x, ch) = static_cast<float>((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

Tensor<float> images_to_tensor(const std::vector<Image>& batch) {
  require(!batch.empty(), "config.shape", "empty image batch");
  const int h = batch[0].h, w = batch[0].w, c = batch[0].c;
  Tensor<float> t(static_cast<int>(batch.size()), c, h, w);
  for (size_t n = 0; n < batch.size(); ++n) {
    const Image& img = batch[n];
    require(img.h == h && img.w == w && img.c == c, "config.shape",
            "mixed image sizes in one batch");
    float* dst = t.data() + n * static_cast<size_t>(c) * h * w;
    for (int ch = 0; ch < c; ++ch)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) dst[(static_cast<size_t>(ch) * h + y) * w + x] = img.at(y, x, ch);
  }
  kernels::scale_shift(t.data(), t.data(), t.size(), 1.0f / 127.5f, -1.0f);
  return t;
}

Image tensor_slice_to_image(const Tensor<float>& t, int n) {
  require(n >= 0 && n < t.n, "config.shape", "tensor slice out of range");
  Image img(t.h, t.w, t.c);
  for (int ch = 0; ch < t.c; ++ch)
    for (int y = 0; y < t.h; ++y)
      for (int x = 0; x < t.w; ++x)
        img.at(y, x, ch) = (t.at(n, ch, y, x) + 1.0f) * 127.5f;
  return img;
}

float image_mean(const Image& img) {
  double s = 0.0;
  for (float v : img.px) s += v;
  return static_cast<float>(s / static_cast<double>(img.size()));
}

float image_variance(const Image& img) {
  const double m = image_mean(img);
  double s = 0.0;
  for (float v : img.px) s += (v - m) * (v - m);
  return static_cast<float>(s / static_cast<double>(img.size()));
}

}  // namespace ganfor
