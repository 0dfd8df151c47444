#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ganfor/error.hpp"

namespace ganfor {

// Dense N x C x H x W array, row-major. Training runs with T = float,
// gradient checking with T = double.
template <typename T>
struct Tensor {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<T> v;

  Tensor() = default;
  Tensor(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_),
        v(static_cast<size_t>(n_) * c_ * h_ * w_, T(0)) {
    require(n_ >= 0 && c_ >= 0 && h_ >= 0 && w_ >= 0, "config.shape",
            "negative tensor dimension");
  }

  size_t size() const { return v.size(); }
  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  size_t index(int in, int ic, int iy, int ix) const {
    return ((static_cast<size_t>(in) * c + ic) * h + iy) * w + ix;
  }
  T& at(int in, int ic, int iy, int ix) { return v[index(in, ic, iy, ix)]; }
  const T& at(int in, int ic, int iy, int ix) const { return v[index(in, ic, iy, ix)]; }

  bool same_shape(const Tensor& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }
  std::string shape_str() const {
    return "(" + std::to_string(n) + "," + std::to_string(c) + "," +
           std::to_string(h) + "," + std::to_string(w) + ")";
  }
};

template <typename T>
void require_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
  require(a.same_shape(b), "config.shape",
          std::string(what) + ": shape " + a.shape_str() + " vs " + b.shape_str());
}

}  // namespace ganfor
