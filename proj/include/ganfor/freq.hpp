#pragma once

#include "ganfor/image.hpp"

namespace ganfor {

// Mean power per pixel inside a normalized-frequency band, averaged over
// channels. A DFT bin (u,v) has per-axis frequencies fy = min(u,H-u)/H and
// fx = min(v,W-v)/W, both in [0,0.5]; band membership uses the Chebyshev
// radius max(fy,fx). Computed with a separable direct DFT.
double band_energy(const Image& img, double f_lo, double f_hi);

}  // namespace ganfor
