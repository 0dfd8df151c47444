#pragma once

#include <string>
#include <vector>

#include "ganfor/manifest.hpp"
#include "ganfor/rng.hpp"

namespace ganfor {

// Synthetic dataset with controlled cues. "Real" images are smooth random
// low-frequency fields with mild texture. A fake of family X is a
// real-style base plus a family-specific high-frequency artifact plus a
// shared, subtle low-frequency tone-curve shift common to every fake
// family. Blur at k=7 wipes the family artifacts (high band) but leaves
// the shared cue, which is what lets blur-trained models generalize across
// families here.
struct FamilySpec {
  std::string id;
  enum class Kind { Checkerboard, UpsampleGrid, BandNoise } kind =
      Kind::Checkerboard;
  double amp_lo = 4.0, amp_hi = 10.0;   // per-image artifact RMS range
  double band_lo = 0.40, band_hi = 0.50;  // measurement band (Chebyshev freq)
};

// Presets: A = fixed-phase checkerboard, B = periodic 4x upsampling
// residual, C = band-limited noise.
FamilySpec family_preset(const std::string& name);

struct SynthParams {
  int size = 128;
  double tone_shift = 5.0;  // shared fake cue, gray levels at mid-tones
  int n_sinusoids = 3;
  double sin_amp_lo = 8.0, sin_amp_hi = 22.0;
  double wavelength_lo = 16.0, wavelength_hi = 64.0;
  double texture_smooth_amp = 2.5;
  double texture_white_amp = 0.8;
};

// n_per_class reals (source "R_syn") followed by n_per_class fakes per
// family (source "F_fam<id>"), inline pixels, 8-bit quantized,
// deterministic in the rng seed.
Manifest synth_families(int n_per_class, const std::vector<FamilySpec>& families, Rng rng,
                        const SynthParams& params = {});

struct FamilyDiagnostics {
  std::string id;
  double real_band_energy = 0.0;
  double fake_band_energy = 0.0;
  double energy_ratio = 0.0;       // fake/real in the family band
  double blur_attenuation = 0.0;   // fraction of excess band energy removed by k=7 blur
  double mean_shift = 0.0;         // fake-vs-real mean gray level difference
  double mean_shift_blurred = 0.0; // same after k=7 blur (shared-cue persistence)
};

// Frequency-domain cue measurements over (up to) max_per_class images of
// each class.
std::vector<FamilyDiagnostics> synth_diagnostics(const Manifest& m,
                                                 const std::vector<FamilySpec>& families,
                                                 int max_per_class = 16);

}  // namespace ganfor
