#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ganfor/adam.hpp"
#include "ganfor/model.hpp"
#include "ganfor/preprocess.hpp"

namespace ganfor {

// Binary checkpoint, little-endian, fixed layer order (see
// docs/formats.md). save -> load -> save is byte-identical; the trailing
// FNV-1a digest self-checks the payload.
struct CheckpointMeta {
  uint32_t epoch = 0;
  uint64_t init_seed = 0, shuffle_seed = 0, preprocess_seed = 0;
  PreprocessMode mode = PreprocessMode::None;
  uint64_t rng_digest = 0;
};

struct Checkpoint {
  Discriminator<float> model;
  CheckpointMeta meta;
  std::optional<AdamHyper<float>> adam_hyper;
  std::optional<AdamState<float>> adam_state;
};

// Detector naming: none -> M, blur -> M_GB, noise -> M_GN.
std::string detector_id(PreprocessMode mode);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

uint64_t fnv1a64(const void* data, size_t size, uint64_t seed = 14695981039346656037ull);

}  // namespace ganfor
