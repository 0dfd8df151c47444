#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ganfor/image.hpp"

namespace ganfor {

// One dataset entry. Pixels either live on disk (path) or inline (pixels),
// the latter used by the synthetic generator and in-memory experiments.
// Label convention: real = 1, fake = 0.
struct ImageRecord {
  std::string path;
  std::shared_ptr<const Pixels8> pixels;
  int label = 0;
  std::string source;
};

// Ordered record list. Order is significant: splits take the first
// train_count and the last test_count records.
struct Manifest {
  std::vector<ImageRecord> records;
  int image_size = 128;
  int version = 1;

  size_t size() const { return records.size(); }
};

// File format: UTF-8, one record per line, `path<TAB>label<TAB>source`,
// label in {real,fake}, '#' starts a comment. Two comment directives are
// recognized: `# ganfor-manifest v<N>` and `# image-size <N>`.
Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& m, const std::string& path);

// Source tags with the reserved prefixes R_ / F_ must carry the matching
// label; other tags are free-form.
void check_record_consistency(const ImageRecord& r);

std::pair<Manifest, Manifest> split(const Manifest& m, size_t train_count, size_t test_count);

Manifest filter_by_source(const Manifest& m, const std::string& source);
Manifest filter_by_label(const Manifest& m, int label);
Manifest concat(const Manifest& a, const Manifest& b);

// Decoded, resized, [0,255] float pixels for one record.
Image load_record_image(const ImageRecord& r, int target_size);

}  // namespace ganfor
