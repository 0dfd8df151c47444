#include "ganfor/train.hpp"

#include <cstdio>
#include <filesystem>

#include "ganfor/batching.hpp"
#include "ganfor/codec.hpp"
#include "ganfor/loss.hpp"

namespace ganfor {

namespace {

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  // The log format is locale-independent by contract.
  for (char& c : buf)
    if (c == ',') c = '.';
  return buf;
}

uint64_t run_digest(const TrainConfig& c, int epoch) {
  uint64_t words[4] = {c.init_seed, c.shuffle_seed, c.preprocess_seed,
                       static_cast<uint64_t>(epoch)};
  return fnv1a64(words, sizeof(words));
}

void save_run_checkpoint(const TrainConfig& config, const Discriminator<float>& model,
                         const AdamState<float>& adam, int epoch, const std::string& path) {
  Checkpoint ckpt;
  ckpt.model = model;
  ckpt.meta.epoch = static_cast<uint32_t>(epoch);
  ckpt.meta.init_seed = config.init_seed;
  ckpt.meta.shuffle_seed = config.shuffle_seed;
  ckpt.meta.preprocess_seed = config.preprocess_seed;
  ckpt.meta.mode = config.mode;
  ckpt.meta.rng_digest = run_digest(config, epoch);
  ckpt.adam_hyper = config.optimizer;
  ckpt.adam_state = adam;
  save_checkpoint(ckpt, path);
}

}  // namespace

std::string train_log_to_tsv(const std::vector<EpochLog>& log) {
  std::string out;
  for (const auto& e : log) {
    out += std::to_string(e.epoch);
    out += '\t';
    out += format_fixed(e.mean_loss, 6);
    out += '\t';
    out += format_fixed(e.train_acc_percent, 4);
    out += '\n';
  }
  return out;
}

TrainResult train(const TrainConfig& config, const Manifest& train_manifest) {
  config.model.validate();
  config.optimizer.validate();
  require(config.batch_size >= 2 && config.batch_size % 2 == 0, "config.batch",
          "training batch size must be even and >= 2");
  require(config.epochs >= 1, "config.value", "epochs must be >= 1");

  auto real_pool = filter_by_label(train_manifest, 1);
  auto fake_pool = filter_by_label(train_manifest, 0);
  require(!real_pool.records.empty() && !fake_pool.records.empty(), "config.value",
          "training manifest needs both real and fake records");

  const int size = config.model.input_size;
  auto preload = [size](const Manifest& pool) {
    std::vector<Image> images;
    images.reserve(pool.size());
    for (const auto& r : pool.records) images.push_back(load_record_image(r, size));
    return images;
  };
  const auto real_images = preload(real_pool);
  const auto fake_images = preload(fake_pool);

  TrainResult result;
  result.model = build<float>(config.model, config.init_seed);
  result.adam = AdamState<float>::zeros(result.model.parameter_count());

  const Rng shuffle_root(config.shuffle_seed);
  const Rng preprocess_root(config.preprocess_seed);
  const size_t half = static_cast<size_t>(config.batch_size) / 2;

  std::FILE* log_file = nullptr;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    const auto log_path = config.out_dir + "/train_log.tsv";
    log_file = std::fopen(log_path.c_str(), "wb");
    require(log_file != nullptr, "io.write", "cannot open '" + log_path + "'");
  }

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    auto plans = make_batches(real_images.size(), fake_images.size(), config.batch_size,
                              shuffle_root.child(static_cast<uint64_t>(epoch)));
    require(!plans.empty(), "config.batch",
            "no full batch: pools " + std::to_string(real_images.size()) + "/" +
                std::to_string(fake_images.size()) + " vs batch size " +
                std::to_string(config.batch_size));

    const Rng epoch_preprocess = preprocess_root.child(static_cast<uint64_t>(epoch));
    double loss_sum = 0.0;
    long long correct = 0, seen = 0;

    for (size_t b = 0; b < plans.size(); ++b) {
      std::vector<Image> images;
      images.reserve(config.batch_size);
      for (size_t idx : plans[b].real_indices) images.push_back(real_images[idx]);
      for (size_t idx : plans[b].fake_indices) images.push_back(fake_images[idx]);

      Rng batch_rng = epoch_preprocess.child(b);
      const auto draw = draw_batch_preprocessing(config.mode, batch_rng);
      apply(draw, images, batch_rng);

      auto batch = images_to_tensor(images);
      Tensor<float> labels(config.batch_size, 1, 1, 1);
      for (size_t i = 0; i < half; ++i) labels.v[i] = 1.0f;

      ForwardCache<float> cache;
      auto logits = forward(result.model, batch, Mode::Train, &cache);
      Tensor<float> z(config.batch_size, 1, 1, 1);
      z.v.assign(logits.begin(), logits.end());
      auto bce = bce_with_logits(z, labels);
      auto grads = backward(result.model, cache, bce.grad_logits.v);

      auto params = result.model.param_views();
      adam_step(params, grads.views(), result.adam, config.optimizer);

      loss_sum += bce.loss;
      for (int i = 0; i < config.batch_size; ++i) {
        const bool predicted_real = logits[i] > 0.0f;
        const bool is_real = labels.v[i] == 1.0f;
        correct += (predicted_real == is_real) ? 1 : 0;
      }
      seen += config.batch_size;
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.mean_loss = loss_sum / static_cast<double>(plans.size());
    entry.train_acc_percent = 100.0 * static_cast<double>(correct) / static_cast<double>(seen);
    result.log.push_back(entry);

    if (log_file) {
      const auto line = train_log_to_tsv({entry});
      std::fwrite(line.data(), 1, line.size(), log_file);
      std::fflush(log_file);
    }
    if (!config.out_dir.empty() && config.checkpoint_every > 0 &&
        epoch % config.checkpoint_every == 0 && epoch != config.epochs) {
      save_run_checkpoint(config, result.model, result.adam, epoch,
                          config.out_dir + "/checkpoint_epoch" + std::to_string(epoch) + ".gfc");
    }
  }

  if (log_file) std::fclose(log_file);
  if (!config.out_dir.empty()) {
    result.checkpoint_path = config.out_dir + "/checkpoint.gfc";
    save_run_checkpoint(config, result.model, result.adam, config.epochs,
                        result.checkpoint_path);
  }
  return result;
}

}  // namespace ganfor
