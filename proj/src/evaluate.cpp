#include "ganfor/evaluate.hpp"

#include <algorithm>
#include <thread>

#include "ganfor/loss.hpp"

namespace ganfor {

namespace {

// Scores for records [begin,end) of the manifest.
void score_range(Discriminator<float>& model, const Manifest& test, size_t begin,
                 size_t end, int batch_size, std::vector<float>& out) {
  const int size = model.config.input_size;
  size_t pos = begin;
  while (pos < end) {
    const size_t take = std::min<size_t>(batch_size, end - pos);
    std::vector<Image> images;
    images.reserve(take);
    for (size_t i = 0; i < take; ++i)
      images.push_back(load_record_image(test.records[pos + i], size));
    auto batch = images_to_tensor(images);
    auto logits = forward(model, batch, Mode::Infer);
    for (size_t i = 0; i < take; ++i) out[pos + i] = sigmoid(logits[i]);
    pos += take;
  }
}

}  // namespace

std::vector<float> score_manifest(Discriminator<float>& model, const Manifest& test,
                                  int batch_size) {
  require(!test.records.empty(), "config.value", "evaluation manifest is empty");
  require(batch_size >= 1, "config.batch", "evaluation batch size must be >= 1");
  std::vector<float> scores(test.size());
  score_range(model, test, 0, test.size(), batch_size, scores);
  return scores;
}

Metrics evaluate(Discriminator<float>& model, const Manifest& test, int batch_size,
                 int threads) {
  require(!test.records.empty(), "config.value", "evaluation manifest is empty");
  require(batch_size >= 1, "config.batch", "evaluation batch size must be >= 1");
  threads = std::max(1, threads);

  std::vector<float> scores(test.size());
  if (threads == 1 || test.size() < static_cast<size_t>(2 * batch_size)) {
    score_range(model, test, 0, test.size(), batch_size, scores);
  } else {
    // Infer-mode forward is read-only on the model, so workers share it.
    const size_t per = (test.size() + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const size_t begin = std::min<size_t>(t * per, test.size());
      const size_t end = std::min<size_t>(begin + per, test.size());
      if (begin >= end) break;
      pool.emplace_back([&, begin, end]() {
        score_range(model, test, begin, end, batch_size, scores);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<int> labels(test.size());
  for (size_t i = 0; i < test.size(); ++i) labels[i] = test.records[i].label;
  return compute_metrics(scores, labels, 0.5);
}

std::string test_set_name(const Manifest& test) {
  std::vector<std::string> fake_tags, real_tags;
  for (const auto& r : test.records) {
    auto& tags = r.label == 0 ? fake_tags : real_tags;
    if (std::find(tags.begin(), tags.end(), r.source) == tags.end())
      tags.push_back(r.source);
  }
  std::string name;
  for (const auto& t : fake_tags) {
    if (!name.empty()) name += " + ";
    name += t;
  }
  for (const auto& t : real_tags) {
    if (!name.empty()) name += " + ";
    name += t;
  }
  return name.empty() ? "(empty)" : name;
}

}  // namespace ganfor
