#include "ganfor/synth.hpp"

#include <algorithm>
#include <cmath>

#include "ganfor/error.hpp"
#include "ganfor/freq.hpp"
#include "ganfor/preprocess.hpp"

namespace ganfor {

namespace {
constexpr double kPi = 3.14159265358979323846;

double rms(const Image& img) {
  double s = 0.0;
  for (float v : img.px) s += static_cast<double>(v) * v;
  return std::sqrt(s / static_cast<double>(img.size()));
}

void scale_to_rms(Image& img, double target) {
  const double r = rms(img);
  if (r < 1e-12) return;
  const float s = static_cast<float>(target / r);
  for (auto& v : img.px) v *= s;
}

Image white_noise(int size, Rng& rng) {
  Image img(size, size, 1);
  for (auto& v : img.px) v = static_cast<float>(rng.normal());
  return img;
}

// Smooth random field around mid-gray: a few low-frequency sinusoids plus
// mild texture; channels share the field with small gain variation.
Image base_field(int size, Rng& rng, const SynthParams& p) {
  std::vector<double> amp(p.n_sinusoids), freq(p.n_sinusoids), phase(p.n_sinusoids);
  std::vector<double> dir_x(p.n_sinusoids), dir_y(p.n_sinusoids);
  for (int s = 0; s < p.n_sinusoids; ++s) {
    const double theta = rng.uniform(0.0, kPi);
    const double wavelength = rng.uniform(p.wavelength_lo, p.wavelength_hi);
    amp[s] = rng.uniform(p.sin_amp_lo, p.sin_amp_hi);
    freq[s] = 2.0 * kPi / wavelength;
    phase[s] = rng.uniform(0.0, 2.0 * kPi);
    dir_x[s] = std::cos(theta);
    dir_y[s] = std::sin(theta);
  }
  double gain[3];
  for (auto& g : gain) g = rng.uniform(0.9, 1.1);

  Image smooth_tex = separable_gaussian(white_noise(size, rng), 7, 1.2);
  scale_to_rms(smooth_tex, 1.0);

  Image img(size, size, 3);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      double field = 0.0;
      for (int s = 0; s < p.n_sinusoids; ++s)
        field += amp[s] * std::sin(freq[s] * (x * dir_x[s] + y * dir_y[s]) + phase[s]);
      const double tex = p.texture_smooth_amp * smooth_tex.at(y, x, 0);
      for (int ch = 0; ch < 3; ++ch) {
        const double white = p.texture_white_amp * rng.normal();
        const double v = 128.0 + gain[ch] * field + tex + white;
        img.at(y, x, ch) = static_cast<float>(std::min(255.0, std::max(0.0, v)));
      }
    }
  return img;
}

Image checkerboard_artifact(const Image& base, Rng& rng) {
  const int size = base.h;
  const double p1 = rng.uniform(0.0, 2.0 * kPi);
  const double p2 = rng.uniform(0.0, 2.0 * kPi);
  Image art(size, size, 1);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const double sign = ((x + y) & 1) ? 1.0 : -1.0;  // fixed phase
      const double env = 0.75 + 0.25 * std::sin(2.0 * kPi * x / 32.0 + p1) *
                                    std::sin(2.0 * kPi * y / 32.0 + p2);
      art.at(y, x, 0) = static_cast<float>(sign * env);
    }
  return art;
}

// Residual between nearest-neighbor and bilinear 4x upsampling of the
// downsampled base: a content-locked staircase pattern with period 4.
Image upsample_artifact(const Image& base) {
  const int size = base.h;
  const int small = size / 4;
  Image mono(size, size, 1);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      mono.at(y, x, 0) = (base.at(y, x, 0) + base.at(y, x, 1) + base.at(y, x, 2)) / 3.0f;

  Image down(small, small, 1);
  for (int y = 0; y < small; ++y)
    for (int x = 0; x < small; ++x) {
      double acc = 0.0;
      for (int dy = 0; dy < 4; ++dy)
        for (int dx = 0; dx < 4; ++dx) acc += mono.at(4 * y + dy, 4 * x + dx, 0);
      down.at(y, x, 0) = static_cast<float>(acc / 16.0);
    }

  Image smooth = resize_bilinear(down, size, size);
  Image art(size, size, 1);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      art.at(y, x, 0) = down.at(y / 4, x / 4, 0) - smooth.at(y, x, 0);
  return art;
}

Image bandnoise_artifact(int size, Rng& rng) {
  Image white = white_noise(size, rng);
  Image lo = separable_gaussian(white, 3, 0.42);
  Image hi = separable_gaussian(white, 5, 0.75);
  Image art(size, size, 1);
  for (size_t i = 0; i < art.px.size(); ++i) art.px[i] = lo.px[i] - hi.px[i];
  return art;
}

void apply_tone_shift(Image& img, double delta) {
  for (auto& v : img.px) {
    const double shifted = v + delta * std::sin(kPi * v / 255.0);
    v = static_cast<float>(std::min(255.0, std::max(0.0, shifted)));
  }
}

Pixels8 make_fake(const FamilySpec& fam, Rng& rng, const SynthParams& p) {
  Image img = base_field(p.size, rng, p);
  Image art;
  switch (fam.kind) {
    case FamilySpec::Kind::Checkerboard:
      art = checkerboard_artifact(img, rng);
      break;
    case FamilySpec::Kind::UpsampleGrid:
      art = upsample_artifact(img);
      break;
    case FamilySpec::Kind::BandNoise:
      art = bandnoise_artifact(p.size, rng);
      break;
  }
  scale_to_rms(art, rng.uniform(fam.amp_lo, fam.amp_hi));
  for (int y = 0; y < p.size; ++y)
    for (int x = 0; x < p.size; ++x)
      for (int ch = 0; ch < 3; ++ch) {
        const double v = img.at(y, x, ch) + art.at(y, x, 0);
        img.at(y, x, ch) = static_cast<float>(std::min(255.0, std::max(0.0, v)));
      }
  apply_tone_shift(img, p.tone_shift);
  return quantize(img);
}

}  // namespace

FamilySpec family_preset(const std::string& name) {
  FamilySpec f;
  f.id = name;
  if (name == "A") {
    f.kind = FamilySpec::Kind::Checkerboard;
    f.band_lo = 0.40;
    f.band_hi = 0.50;
  } else if (name == "B") {
    f.kind = FamilySpec::Kind::UpsampleGrid;
    f.band_lo = 0.20;
    f.band_hi = 0.35;
  } else if (name == "C") {
    f.kind = FamilySpec::Kind::BandNoise;
    f.band_lo = 0.25;
    f.band_hi = 0.45;
  } else {
    fail("config.value", "unknown family preset '" + name + "' (A|B|C)");
  }
  return f;
}

Manifest synth_families(int n_per_class, const std::vector<FamilySpec>& families, Rng rng,
                        const SynthParams& params) {
  require(n_per_class >= 0, "config.value", "n_per_class must be >= 0");
  require(params.size >= 16 && params.size % 4 == 0, "config.value",
          "synthetic image size must be >= 16 and divisible by 4");

  Manifest m;
  m.image_size = params.size;
  uint64_t stream = 0;

  for (int i = 0; i < n_per_class; ++i) {
    Rng r = rng.child(stream++);
    ImageRecord rec;
    rec.pixels = std::make_shared<Pixels8>(quantize(base_field(params.size, r, params)));
    rec.label = 1;
    rec.source = "R_syn";
    m.records.push_back(std::move(rec));
  }
  for (const auto& fam : families) {
    for (int i = 0; i < n_per_class; ++i) {
      Rng r = rng.child(stream++);
      ImageRecord rec;
      rec.pixels = std::make_shared<Pixels8>(make_fake(fam, r, params));
      rec.label = 0;
      rec.source = "F_fam" + fam.id;
      m.records.push_back(std::move(rec));
    }
  }
  return m;
}

std::vector<FamilyDiagnostics> synth_diagnostics(const Manifest& m,
                                                 const std::vector<FamilySpec>& families,
                                                 int max_per_class) {
  auto reals = filter_by_label(m, 1);
  require(!reals.records.empty(), "config.value", "diagnostics need real records");
  const int n_real = std::min<int>(max_per_class, static_cast<int>(reals.size()));

  std::vector<FamilyDiagnostics> out;
  for (const auto& fam : families) {
    auto fakes = filter_by_source(m, "F_fam" + fam.id);
    require(!fakes.records.empty(), "config.value",
            "no records for family '" + fam.id + "'");
    const int n_fake = std::min<int>(max_per_class, static_cast<int>(fakes.size()));

    FamilyDiagnostics d;
    d.id = fam.id;
    double real_e = 0.0, fake_e = 0.0, real_eb = 0.0, fake_eb = 0.0;
    double real_mean = 0.0, fake_mean = 0.0, real_mean_b = 0.0, fake_mean_b = 0.0;
    for (int i = 0; i < n_real; ++i) {
      Image img = load_record_image(reals.records[i], m.image_size);
      Image blurred = gaussian_blur(img, 7);
      real_e += band_energy(img, fam.band_lo, fam.band_hi);
      real_eb += band_energy(blurred, fam.band_lo, fam.band_hi);
      real_mean += image_mean(img);
      real_mean_b += image_mean(blurred);
    }
    for (int i = 0; i < n_fake; ++i) {
      Image img = load_record_image(fakes.records[i], m.image_size);
      Image blurred = gaussian_blur(img, 7);
      fake_e += band_energy(img, fam.band_lo, fam.band_hi);
      fake_eb += band_energy(blurred, fam.band_lo, fam.band_hi);
      fake_mean += image_mean(img);
      fake_mean_b += image_mean(blurred);
    }
    real_e /= n_real;
    real_eb /= n_real;
    real_mean /= n_real;
    real_mean_b /= n_real;
    fake_e /= n_fake;
    fake_eb /= n_fake;
    fake_mean /= n_fake;
    fake_mean_b /= n_fake;

    d.real_band_energy = real_e;
    d.fake_band_energy = fake_e;
    d.energy_ratio = real_e > 0.0 ? fake_e / real_e : 0.0;
    const double excess = fake_e - real_e;
    const double excess_blurred = fake_eb - real_eb;
    d.blur_attenuation = excess > 0.0 ? 1.0 - excess_blurred / excess : 0.0;
    d.mean_shift = fake_mean - real_mean;
    d.mean_shift_blurred = fake_mean_b - real_mean_b;
    out.push_back(d);
  }
  return out;
}

}  // namespace ganfor
