#ifdef GANFOR_HAVE_AVX2

#include "ganfor/kernels_avx2.hpp"

#include <immintrin.h>

#include "ganfor/kernels_ref.hpp"

// Equivalence rules with the scalar reference:
//  - lanes are distinct output elements; each lane accumulates its terms in
//    the reference order, so sums round identically
//  - mul followed by add, never fmadd (the build also disables contraction)
//  - vsqrtps/vdivps are correctly rounded, matching their scalar forms
// Zero-padding taps enter as masked-off (zero) products. Adding a signed
// zero never changes a finite accumulator, so skipping and masking agree.
namespace ganfor::kernels::avx2 {

namespace {

const __m256i kIota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

inline __m256i lane_mask(int lanes) {
  return _mm256_cmpgt_epi32(_mm256_set1_epi32(lanes), kIota);
}

}  // namespace

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    const ConvDims& d) {
  const size_t x_ch = static_cast<size_t>(d.h) * d.w;
  const size_t y_row = static_cast<size_t>(d.out_w);
  const __m256i stride_v = _mm256_set1_epi32(d.stride);
  const __m256i iota_s = _mm256_mullo_epi32(kIota, stride_v);

  for (int n = 0; n < d.n; ++n) {
    const float* xn = x + static_cast<size_t>(n) * d.c_in * x_ch;
    for (int co = 0; co < d.c_out; ++co) {
      const float* wk = w + static_cast<size_t>(co) * d.c_in * d.k * d.k;
      const __m256 bias = _mm256_set1_ps(b[co]);
      float* yo = y + ((static_cast<size_t>(n) * d.c_out + co) * d.out_h) * y_row;
      for (int oh = 0; oh < d.out_h; ++oh) {
        for (int ow0 = 0; ow0 < d.out_w; ow0 += 8) {
          const int lanes = d.out_w - ow0 < 8 ? d.out_w - ow0 : 8;
          const __m256i lmask = lane_mask(lanes);

          // Per-kw gather indices and validity, shared across (ci,kh).
          __m256i idx[16];
          __m256i msk[16];
          for (int kw = 0; kw < d.k; ++kw) {
            const int base = ow0 * d.stride - d.pad + kw;
            __m256i iw = _mm256_add_epi32(_mm256_set1_epi32(base), iota_s);
            __m256i ge0 = _mm256_cmpgt_epi32(iw, _mm256_set1_epi32(-1));
            __m256i ltw = _mm256_cmpgt_epi32(_mm256_set1_epi32(d.w), iw);
            msk[kw] = _mm256_and_si256(_mm256_and_si256(ge0, ltw), lmask);
            idx[kw] = _mm256_max_epi32(iw, _mm256_setzero_si256());
          }

          __m256 acc = bias;
          for (int ci = 0; ci < d.c_in; ++ci) {
            const float* xc = xn + static_cast<size_t>(ci) * x_ch;
            const float* wc = wk + static_cast<size_t>(ci) * d.k * d.k;
            for (int kh = 0; kh < d.k; ++kh) {
              const int ih = oh * d.stride - d.pad + kh;
              if (ih < 0 || ih >= d.h) continue;
              const float* row = xc + static_cast<size_t>(ih) * d.w;
              for (int kw = 0; kw < d.k; ++kw) {
                const __m256 wv = _mm256_set1_ps(wc[kh * d.k + kw]);
                const __m256 xv = _mm256_mask_i32gather_ps(
                    _mm256_setzero_ps(), row, idx[kw],
                    _mm256_castsi256_ps(msk[kw]), 4);
                acc = _mm256_add_ps(acc, _mm256_mul_ps(wv, xv));
              }
            }
          }
          _mm256_maskstore_ps(yo + static_cast<size_t>(oh) * y_row + ow0, lmask, acc);
        }
      }
    }
  }
}

void conv2d_grad_weights(const float* x, const float* gy, float* gw, const ConvDims& d) {
  if (d.k > 8) {
    ref::conv2d_grad_weights(x, gy, gw, d);
    return;
  }
  // Lanes are the kw positions of one kernel row; k accumulators cover one
  // (co,ci) kernel plane. Term order per weight element is (n,oh,ow).
  const size_t x_ch = static_cast<size_t>(d.h) * d.w;
  const __m256i kmask = lane_mask(d.k);

  for (int co = 0; co < d.c_out; ++co) {
    for (int ci = 0; ci < d.c_in; ++ci) {
      __m256 acc[8];
      for (int kh = 0; kh < d.k; ++kh) acc[kh] = _mm256_setzero_ps();

      for (int n = 0; n < d.n; ++n) {
        const float* xc = x + (static_cast<size_t>(n) * d.c_in + ci) * x_ch;
        const float* gc = gy + (static_cast<size_t>(n) * d.c_out + co) *
                                   (static_cast<size_t>(d.out_h) * d.out_w);
        for (int oh = 0; oh < d.out_h; ++oh) {
          for (int ow = 0; ow < d.out_w; ++ow) {
            const __m256 g = _mm256_set1_ps(gc[static_cast<size_t>(oh) * d.out_w + ow]);
            const int iw0 = ow * d.stride - d.pad;
            __m256i m = kmask;
            if (iw0 < 0 || iw0 + d.k > d.w) {
              __m256i iw = _mm256_add_epi32(_mm256_set1_epi32(iw0), kIota);
              __m256i ge0 = _mm256_cmpgt_epi32(iw, _mm256_set1_epi32(-1));
              __m256i ltw = _mm256_cmpgt_epi32(_mm256_set1_epi32(d.w), iw);
              m = _mm256_and_si256(kmask, _mm256_and_si256(ge0, ltw));
            }
            for (int kh = 0; kh < d.k; ++kh) {
              const int ih = oh * d.stride - d.pad + kh;
              if (ih < 0 || ih >= d.h) continue;
              const __m256 xv =
                  _mm256_maskload_ps(xc + static_cast<size_t>(ih) * d.w + iw0, m);
              acc[kh] = _mm256_add_ps(acc[kh], _mm256_mul_ps(xv, g));
            }
          }
        }
      }
      float* gwp = gw + (static_cast<size_t>(co) * d.c_in + ci) * d.k * d.k;
      for (int kh = 0; kh < d.k; ++kh) _mm256_maskstore_ps(gwp + kh * d.k, kmask, acc[kh]);
    }
  }
}

void conv2d_grad_input(const float* w, const float* gy, float* gx, const ConvDims& d) {
  // Lanes are input channels; weight taps for the lane group are gathered
  // with stride k*k. Term order per input element is (co,kh,kw).
  const size_t x_ch = static_cast<size_t>(d.h) * d.w;
  const size_t g_ch = static_cast<size_t>(d.out_h) * d.out_w;
  const int kk = d.k * d.k;
  const __m256i widx = _mm256_mullo_epi32(kIota, _mm256_set1_epi32(kk));

  for (int n = 0; n < d.n; ++n) {
    const float* gn = gy + static_cast<size_t>(n) * d.c_out * g_ch;
    for (int ci0 = 0; ci0 < d.c_in; ci0 += 8) {
      const int lanes = d.c_in - ci0 < 8 ? d.c_in - ci0 : 8;
      const __m256i lmask = lane_mask(lanes);
      const __m256 fmask = _mm256_castsi256_ps(lmask);
      for (int ih = 0; ih < d.h; ++ih) {
        for (int iw = 0; iw < d.w; ++iw) {
          __m256 acc = _mm256_setzero_ps();
          for (int co = 0; co < d.c_out; ++co) {
            const float* wc = w + (static_cast<size_t>(co) * d.c_in + ci0) * kk;
            const float* gc = gn + static_cast<size_t>(co) * g_ch;
            for (int kh = 0; kh < d.k; ++kh) {
              const int oh_num = ih + d.pad - kh;
              if (oh_num < 0 || oh_num % d.stride != 0) continue;
              const int oh = oh_num / d.stride;
              if (oh >= d.out_h) continue;
              for (int kw = 0; kw < d.k; ++kw) {
                const int ow_num = iw + d.pad - kw;
                if (ow_num < 0 || ow_num % d.stride != 0) continue;
                const int ow = ow_num / d.stride;
                if (ow >= d.out_w) continue;
                const __m256 g = _mm256_set1_ps(gc[static_cast<size_t>(oh) * d.out_w + ow]);
                const __m256 wv = _mm256_mask_i32gather_ps(
                    _mm256_setzero_ps(), wc + kh * d.k + kw, widx, fmask, 4);
                acc = _mm256_add_ps(acc, _mm256_mul_ps(wv, g));
              }
            }
          }
          float out[8];
          _mm256_storeu_ps(out, acc);
          for (int l = 0; l < lanes; ++l)
            gx[(static_cast<size_t>(n) * d.c_in + ci0 + l) * x_ch +
               static_cast<size_t>(ih) * d.w + iw] = out[l];
        }
      }
    }
  }
}

void leaky_relu_forward(const float* x, float* y, size_t count, float slope) {
  const __m256 s = _mm256_set1_ps(slope);
  const __m256 zero = _mm256_setzero_ps();
  size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256 xv = _mm256_loadu_ps(x + i);
    const __m256 keep = _mm256_cmp_ps(xv, zero, _CMP_GE_OQ);
    _mm256_storeu_ps(y + i, _mm256_blendv_ps(_mm256_mul_ps(s, xv), xv, keep));
  }
  if (i < count) ref::leaky_relu_forward(x + i, y + i, count - i, slope);
}

void leaky_relu_backward(const float* x, const float* gy, float* gx, size_t count,
                         float slope) {
  const __m256 s = _mm256_set1_ps(slope);
  const __m256 zero = _mm256_setzero_ps();
  size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256 xv = _mm256_loadu_ps(x + i);
    const __m256 gv = _mm256_loadu_ps(gy + i);
    const __m256 keep = _mm256_cmp_ps(xv, zero, _CMP_GE_OQ);
    _mm256_storeu_ps(gx + i, _mm256_blendv_ps(_mm256_mul_ps(s, gv), gv, keep));
  }
  if (i < count) ref::leaky_relu_backward(x + i, gy + i, gx + i, count - i, slope);
}

void scale_shift(const float* x, float* y, size_t count, float scale, float shift) {
  const __m256 sv = _mm256_set1_ps(scale);
  const __m256 tv = _mm256_set1_ps(shift);
  size_t i = 0;
  for (; i + 8 <= count; i += 8)
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(x + i), sv), tv));
  if (i < count) ref::scale_shift(x + i, y + i, count - i, scale, shift);
}

void adam_step(float* p, const float* g, float* m, float* v, size_t count, float lr,
               float beta1, float beta2, float c1, float c2, float eps) {
  const __m256 b1 = _mm256_set1_ps(beta1);
  const __m256 b2 = _mm256_set1_ps(beta2);
  const __m256 om1 = _mm256_set1_ps(1.0f - beta1);
  const __m256 om2 = _mm256_set1_ps(1.0f - beta2);
  const __m256 c1v = _mm256_set1_ps(c1);
  const __m256 c2v = _mm256_set1_ps(c2);
  const __m256 lrv = _mm256_set1_ps(lr);
  const __m256 ev = _mm256_set1_ps(eps);
  size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256 gv = _mm256_loadu_ps(g + i);
    const __m256 mv = _mm256_add_ps(_mm256_mul_ps(b1, _mm256_loadu_ps(m + i)),
                                    _mm256_mul_ps(om1, gv));
    const __m256 vv = _mm256_add_ps(_mm256_mul_ps(b2, _mm256_loadu_ps(v + i)),
                                    _mm256_mul_ps(om2, _mm256_mul_ps(gv, gv)));
    _mm256_storeu_ps(m + i, mv);
    _mm256_storeu_ps(v + i, vv);
    const __m256 mhat = _mm256_mul_ps(mv, c1v);
    const __m256 vhat = _mm256_mul_ps(vv, c2v);
    const __m256 den = _mm256_add_ps(_mm256_sqrt_ps(vhat), ev);
    const __m256 upd = _mm256_div_ps(_mm256_mul_ps(lrv, mhat), den);
    _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), upd));
  }
  if (i < count)
    ref::adam_step(p + i, g + i, m + i, v + i, count - i, lr, beta1, beta2, c1, c2, eps);
}

}  // namespace ganfor::kernels::avx2

#endif  // GANFOR_HAVE_AVX2
