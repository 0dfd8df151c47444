#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ganfor/image.hpp"

namespace ganfor {

// PNG (lossless) and JPEG, 8-bit output. Grayscale is replicated to three
// channels, alpha is dropped. Errors surface as io.decode / io.write with
// the file identity in the message.
Pixels8 decode_image(const std::vector<uint8_t>& bytes, const std::string& name);
Pixels8 decode_image_file(const std::string& path);

std::vector<uint8_t> encode_png(const Pixels8& img);
void write_png(const Pixels8& img, const std::string& path);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const void* data, size_t size);

}  // namespace ganfor
