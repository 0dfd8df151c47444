#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ganfor/adam.hpp"
#include "ganfor/checkpoint.hpp"
#include "ganfor/manifest.hpp"
#include "ganfor/model.hpp"
#include "ganfor/preprocess.hpp"

namespace ganfor {

// One training run is a pure function of this config plus the manifest
// contents: fixed seeds drive init, shuffling and preprocessing draws, so
// identical configs produce byte-identical checkpoints.
struct TrainConfig {
  PreprocessMode mode = PreprocessMode::None;  // none -> M, blur -> M_GB, noise -> M_GN
  DiscriminatorConfig model;
  AdamHyper<float> optimizer;
  int batch_size = 64;
  int epochs = 20;
  uint64_t init_seed = 1;
  uint64_t shuffle_seed = 2;
  uint64_t preprocess_seed = 3;
  int checkpoint_every = 0;  // epochs between checkpoints; 0 = final only
  std::string out_dir;       // empty = in-memory run, no files
};

struct EpochLog {
  int epoch = 0;
  double mean_loss = 0.0;
  double train_acc_percent = 0.0;
};

struct TrainResult {
  Discriminator<float> model;
  AdamState<float> adam;
  std::vector<EpochLog> log;
  std::string checkpoint_path;  // final checkpoint when out_dir is set
};

// Per epoch: shuffle into balanced batches, then per batch: one
// preprocessing draw, apply, normalize, train-mode forward, BCE, backward,
// Adam step. Logs per-epoch mean loss and train accuracy.
TrainResult train(const TrainConfig& config, const Manifest& train_manifest);

std::string train_log_to_tsv(const std::vector<EpochLog>& log);

}  // namespace ganfor
