#pragma once

#include "ganfor/manifest.hpp"
#include "ganfor/metrics.hpp"
#include "ganfor/model.hpp"

namespace ganfor {

// Infer-mode evaluation on raw images: decode, resize, normalize — never
// preprocess. Decision threshold 0.5 on the sigmoid score. Images are
// scored in manifest order; with threads > 1 the manifest is chunked and
// the integer counts summed, which is schedule-independent.
Metrics evaluate(Discriminator<float>& model, const Manifest& test, int batch_size = 64,
                 int threads = 1);

// Per-image sigmoid scores in manifest order (diagnostics).
std::vector<float> score_manifest(Discriminator<float>& model, const Manifest& test,
                                  int batch_size = 64);

// "F_x + R_y" style display name from the source tags present.
std::string test_set_name(const Manifest& test);

}  // namespace ganfor
