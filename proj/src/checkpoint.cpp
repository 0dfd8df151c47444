#include "ganfor/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "ganfor/codec.hpp"
#include "ganfor/error.hpp"

namespace ganfor {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'C', 'K'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

struct Writer {
  std::vector<uint8_t> bytes;

  void raw(const void* p, size_t n) {
    const auto* b = static_cast<const uint8_t*>(p);
    bytes.insert(bytes.end(), b, b + n);
  }
  void u8(uint8_t v) { raw(&v, 1); }
  void u32(uint32_t v) { raw(&v, 4); }
  void i32(int32_t v) { raw(&v, 4); }
  void u64(uint64_t v) { raw(&v, 8); }
  void f32(float v) { raw(&v, 4); }
  void f64(double v) { raw(&v, 8); }
  void f32s(const float* p, size_t n) { raw(p, n * 4); }
};

struct Reader {
  const uint8_t* data;
  size_t size;
  size_t pos = 0;
  std::string path;

  void need(size_t n) {
    if (pos + n > size)
      fail("checkpoint.truncated", "'" + path + "' truncated: need " +
                                       std::to_string(pos + n) + " bytes, have " +
                                       std::to_string(size));
  }
  void raw(void* out, size_t n) {
    need(n);
    std::memcpy(out, data + pos, n);
    pos += n;
  }
  uint8_t u8() { uint8_t v; raw(&v, 1); return v; }
  uint32_t u32() { uint32_t v; raw(&v, 4); return v; }
  int32_t i32() { int32_t v; raw(&v, 4); return v; }
  uint64_t u64() { uint64_t v; raw(&v, 8); return v; }
  float f32() { float v; raw(&v, 4); return v; }
  double f64() { double v; raw(&v, 8); return v; }
  void f32s(float* out, size_t n) { raw(out, n * 4); }
};

}  // namespace

uint64_t fnv1a64(const void* data, size_t size, uint64_t seed) {
  const auto* p = static_cast<const uint8_t*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string detector_id(PreprocessMode mode) {
  switch (mode) {
    case PreprocessMode::None: return "M";
    case PreprocessMode::Blur: return "M_GB";
    case PreprocessMode::Noise: return "M_GN";
  }
  return "M";
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  require(ckpt.adam_hyper.has_value() == ckpt.adam_state.has_value(), "checkpoint.write",
          "adam hyper and state must be saved together");
  const auto& cfg = ckpt.model.config;
  Writer w;
  w.raw(kMagic, 4);
  w.u32(kVersion);

  w.i32(cfg.input_size);
  for (int x : cfg.widths) w.i32(x);
  for (bool b : cfg.batchnorm) w.u8(b ? 1 : 0);
  w.f32(cfg.leaky_slope);
  w.f32(cfg.bn_epsilon);
  w.f32(cfg.bn_momentum);
  w.i32(cfg.resolved_head_kernel());

  w.u32(ckpt.meta.epoch);
  w.u64(ckpt.meta.init_seed);
  w.u64(ckpt.meta.shuffle_seed);
  w.u64(ckpt.meta.preprocess_seed);
  w.u8(static_cast<uint8_t>(ckpt.meta.mode));
  w.u64(ckpt.meta.rng_digest);

  for (const auto& view : ckpt.model.param_views()) w.f32s(view.data(), view.size());
  for (const auto& bn : ckpt.model.bns) {
    w.f32s(bn.running_mean.data(), bn.running_mean.size());
    w.f32s(bn.running_var.data(), bn.running_var.size());
  }

  w.u8(ckpt.adam_state.has_value() ? 1 : 0);
  if (ckpt.adam_state) {
    w.f64(ckpt.adam_hyper->lr);
    w.f64(ckpt.adam_hyper->beta1);
    w.f64(ckpt.adam_hyper->beta2);
    w.f64(ckpt.adam_hyper->eps);
    w.u64(ckpt.adam_state->t);
    w.u64(ckpt.adam_state->m.size());
    w.f32s(ckpt.adam_state->m.data(), ckpt.adam_state->m.size());
    w.f32s(ckpt.adam_state->v.data(), ckpt.adam_state->v.size());
  }

  const uint64_t digest = fnv1a64(w.bytes.data(), w.bytes.size());
  w.u64(digest);
  write_file(path, w.bytes.data(), w.bytes.size());
}

Checkpoint load_checkpoint(const std::string& path) {
  const auto bytes = read_file(path);
  Reader r{bytes.data(), bytes.size(), 0, path};

  char magic[4];
  r.raw(magic, 4);
  require(std::memcmp(magic, kMagic, 4) == 0, "checkpoint.magic",
          "'" + path + "' is not a checkpoint file");
  const uint32_t version = r.u32();
  require(version == kVersion, "checkpoint.version",
          "'" + path + "' has version " + std::to_string(version) + ", expected " +
              std::to_string(kVersion));

  // Digest covers everything before the trailing 8 bytes.
  require(bytes.size() >= 8, "checkpoint.truncated", "'" + path + "' too short");
  uint64_t file_digest;
  std::memcpy(&file_digest, bytes.data() + bytes.size() - 8, 8);
  const uint64_t computed = fnv1a64(bytes.data(), bytes.size() - 8);
  require(computed == file_digest, "checkpoint.digest",
          "'" + path + "' payload digest mismatch");

  Checkpoint ckpt;
  DiscriminatorConfig cfg;
  cfg.input_size = r.i32();
  for (auto& x : cfg.widths) x = r.i32();
  for (auto& b : cfg.batchnorm) b = r.u8() != 0;
  cfg.leaky_slope = r.f32();
  cfg.bn_epsilon = r.f32();
  cfg.bn_momentum = r.f32();
  cfg.head_kernel = r.i32();
  cfg.validate();

  ckpt.meta.epoch = r.u32();
  ckpt.meta.init_seed = r.u64();
  ckpt.meta.shuffle_seed = r.u64();
  ckpt.meta.preprocess_seed = r.u64();
  const uint8_t mode = r.u8();
  require(mode <= 2, "checkpoint.corrupt", "'" + path + "' has invalid preprocess mode");
  ckpt.meta.mode = static_cast<PreprocessMode>(mode);
  ckpt.meta.rng_digest = r.u64();

  ckpt.model = build<float>(cfg, 0);
  for (auto view : ckpt.model.param_views()) r.f32s(view.data(), view.size());
  for (auto& bn : ckpt.model.bns) {
    r.f32s(bn.running_mean.data(), bn.running_mean.size());
    r.f32s(bn.running_var.data(), bn.running_var.size());
  }

  if (r.u8() != 0) {
    AdamHyper<float> hyper;
    hyper.lr = static_cast<float>(r.f64());
    hyper.beta1 = static_cast<float>(r.f64());
    hyper.beta2 = static_cast<float>(r.f64());
    hyper.eps = static_cast<float>(r.f64());
    AdamState<float> state;
    state.t = r.u64();
    const uint64_t count = r.u64();
    require(count == ckpt.model.parameter_count(), "checkpoint.corrupt",
            "'" + path + "' adam state size mismatch");
    state.m.resize(count);
    state.v.resize(count);
    r.f32s(state.m.data(), count);
    r.f32s(state.v.data(), count);
    ckpt.adam_hyper = hyper;
    ckpt.adam_state = std::move(state);
  }
  require(r.pos == bytes.size() - 8, "checkpoint.corrupt",
          "'" + path + "' has trailing bytes");
  return ckpt;
}

}  // namespace ganfor
