#pragma once

#include <cstddef>
#include <vector>

#include "ganfor/rng.hpp"

namespace ganfor {

// Index plan for one label-balanced batch: batch_size/2 entries from the
// real pool and batch_size/2 from the fake pool.
struct BatchPlan {
  std::vector<size_t> real_indices;
  std::vector<size_t> fake_indices;
};

// Deterministic per-epoch plan: both pools are shuffled with the given rng,
// then chunked. Incomplete trailing batches are dropped. batch_size must be
// even and >= 2.
std::vector<BatchPlan> make_batches(size_t n_real, size_t n_fake, int batch_size,
                                    Rng epoch_rng);

}  // namespace ganfor
