#include "ganfor/batching.hpp"

#include <numeric>

#include "ganfor/error.hpp"

namespace ganfor {

namespace {
std::vector<size_t> shuffled_indices(size_t n, Rng& rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  return idx;
}
}  // namespace

std::vector<BatchPlan> make_batches(size_t n_real, size_t n_fake, int batch_size,
                                    Rng epoch_rng) {
  require(batch_size >= 2 && batch_size % 2 == 0, "config.batch",
          "batch size must be even and >= 2, got " + std::to_string(batch_size));
  const size_t half = static_cast<size_t>(batch_size) / 2;
  auto real_idx = shuffled_indices(n_real, epoch_rng);
  auto fake_idx = shuffled_indices(n_fake, epoch_rng);

  const size_t n_batches = std::min(n_real, n_fake) / half;
  std::vector<BatchPlan> plans(n_batches);
  for (size_t b = 0; b < n_batches; ++b) {
    plans[b].real_indices.assign(real_idx.begin() + b * half,
                                 real_idx.begin() + (b + 1) * half);
    plans[b].fake_indices.assign(fake_idx.begin() + b * half,
                                 fake_idx.begin() + (b + 1) * half);
  }
  return plans;
}

}  // namespace ganfor
