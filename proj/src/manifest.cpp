#include "ganfor/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ganfor/codec.hpp"
#include "ganfor/error.hpp"

namespace ganfor {

void check_record_consistency(const ImageRecord& r) {
  require(r.label == 0 || r.label == 1, "config.label", "record label must be 0 or 1");
  if (r.source.rfind("R_", 0) == 0)
    require(r.label == 1, "config.label",
            "source '" + r.source + "' implies a real image but label is fake");
  if (r.source.rfind("F_", 0) == 0)
    require(r.label == 0, "config.label",
            "source '" + r.source + "' implies a fake image but label is real");
}

Manifest load_manifest(const std::string& path) {
  require(std::filesystem::exists(path), "io.manifest_missing",
          "manifest '" + path + "' does not exist");
  std::ifstream in(path);
  require(in.good(), "io.manifest_missing", "cannot open manifest '" + path + "'");

  Manifest m;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string key;
      hdr >> key;
      if (key == "ganfor-manifest") {
        std::string v;
        hdr >> v;
        if (!v.empty() && v[0] == 'v') m.version = std::stoi(v.substr(1));
      } else if (key == "image-size") {
        hdr >> m.image_size;
      }
      continue;
    }
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    require(tab1 != std::string::npos && tab2 != std::string::npos, "io.manifest_parse",
            path + ":" + std::to_string(lineno) + ": expected path<TAB>label<TAB>source");
    ImageRecord r;
    r.path = line.substr(0, tab1);
    const std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    r.source = line.substr(tab2 + 1);
    if (label == "real")
      r.label = 1;
    else if (label == "fake")
      r.label = 0;
    else
      fail("io.manifest_parse", path + ":" + std::to_string(lineno) +
                                    ": label must be 'real' or 'fake', got '" + label + "'");
    require(!r.path.empty(), "io.manifest_parse",
            path + ":" + std::to_string(lineno) + ": empty path");
    // Relative record paths resolve against the manifest location.
    if (!r.path.empty() && r.path[0] != '/') {
      const auto dir = std::filesystem::path(path).parent_path();
      if (!dir.empty()) r.path = (dir / r.path).string();
    }
    check_record_consistency(r);
    m.records.push_back(std::move(r));
  }
  return m;
}

void save_manifest(const Manifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  require(out.good(), "io.write", "cannot open manifest '" + path + "' for writing");
  out << "# ganfor-manifest v" << m.version << "\n";
  out << "# image-size " << m.image_size << "\n";
  const auto dir = std::filesystem::path(path).parent_path();
  for (const auto& r : m.records) {
    require(!r.path.empty(), "io.write",
            "cannot save a manifest with inline-only records; export images first");
    // Store paths under the manifest directory as relative.
    std::string p = r.path;
    if (!dir.empty()) {
      const auto rel = std::filesystem::relative(r.path, dir);
      if (!rel.empty() && rel.native().rfind("..", 0) != 0) p = rel.string();
    }
    out << p << '\t' << (r.label == 1 ? "real" : "fake") << '\t' << r.source << '\n';
  }
  require(out.good(), "io.write", "write failed for manifest '" + path + "'");
}

std::pair<Manifest, Manifest> split(const Manifest& m, size_t train_count, size_t test_count) {
  require(train_count + test_count <= m.size(), "config.split",
          "split " + std::to_string(train_count) + "+" + std::to_string(test_count) +
              " exceeds manifest size " + std::to_string(m.size()));
  Manifest train, test;
  train.image_size = test.image_size = m.image_size;
  train.version = test.version = m.version;
  train.records.assign(m.records.begin(), m.records.begin() + train_count);
  test.records.assign(m.records.end() - test_count, m.records.end());
  return {std::move(train), std::move(test)};
}

Manifest filter_by_source(const Manifest& m, const std::string& source) {
  Manifest out;
  out.image_size = m.image_size;
  out.version = m.version;
  for (const auto& r : m.records)
    if (r.source == source) out.records.push_back(r);
  return out;
}

Manifest filter_by_label(const Manifest& m, int label) {
  Manifest out;
  out.image_size = m.image_size;
  out.version = m.version;
  for (const auto& r : m.records)
    if (r.label == label) out.records.push_back(r);
  return out;
}

Manifest concat(const Manifest& a, const Manifest& b) {
  require(a.image_size == b.image_size, "config.split",
          "cannot concat manifests with different image sizes");
  Manifest out = a;
  out.records.insert(out.records.end(), b.records.begin(), b.records.end());
  return out;
}

Image load_record_image(const ImageRecord& r, int target_size) {
  Pixels8 raw;
  if (r.pixels) {
    raw = *r.pixels;
  } else {
    require(!r.path.empty(), "io.read", "record has neither path nor pixels");
    raw = decode_image_file(r.path);
  }
  return resize_bilinear(to_image(raw), target_size, target_size);
}

}  // namespace ganfor
