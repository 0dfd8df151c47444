#pragma once

#include <cmath>
#include <cstdint>

namespace ganfor {

// Deterministic PRNG (xoshiro256++ seeded via splitmix64). The stream is
// fully defined by this file, so runs reproduce bit-exactly across
// platforms and standard-library versions. Child streams are derived from
// the root seed, not the current state, so consumption order in one stream
// never shifts another.
class Rng {
public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  // Uniform in [0,1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer in [0,n). n must be > 0.
  uint64_t below(uint64_t n);
  // Standard normal via Box-Muller; one spare value is cached.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Independent stream keyed by (root seed, stream id).
  Rng child(uint64_t stream) const;

  uint64_t root_seed() const { return root_seed_; }

private:
  uint64_t root_seed_ = 0;
  uint64_t s_[4] = {0, 0, 0, 0};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

uint64_t splitmix64(uint64_t& state);
// Stateless mix of two words, used for seed lineage.
uint64_t mix64(uint64_t a, uint64_t b);

}  // namespace ganfor
