#include "ganfor/codec.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <jerror.h>
#include <jpeglib.h>
#include <png.h>

#include "ganfor/error.hpp"

namespace ganfor {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "io.read", "cannot open '" + path + "'");
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  require(!in.bad(), "io.read", "read failed for '" + path + "'");
  return bytes;
}

void write_file(const std::string& path, const void* data, size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), "io.write", "cannot open '" + path + "' for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  require(out.good(), "io.write", "write failed for '" + path + "'");
}

namespace {

struct MemReader {
  const uint8_t* data;
  size_t size;
  size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
  if (r->pos + count > r->size)
    png_error(png, "truncated stream");
  std::memcpy(out, r->data + r->pos, count);
  r->pos += count;
}

Pixels8 decode_png(const std::vector<uint8_t>& bytes, const std::string& name) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, "io.decode", "libpng init failed for '" + name + "'");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail("io.decode", "libpng init failed for '" + name + "'");
  }

  std::vector<uint8_t> interleaved;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail("io.decode", "corrupt or truncated PNG '" + name + "'");
  }

  MemReader reader{bytes.data(), bytes.size(), 0};
  png_set_read_fn(png, &reader, png_read_from_memory);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail("io.decode", "unsupported PNG channel count in '" + name + "'");
  }

  interleaved.resize(static_cast<size_t>(h) * w * channels);
  rows.resize(h);
  for (int y = 0; y < h; ++y)
    rows[y] = interleaved.data() + static_cast<size_t>(y) * w * channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Pixels8 out;
  out.h = h;
  out.w = w;
  out.c = 3;
  out.px.resize(static_cast<size_t>(h) * w * 3);
  if (channels == 3) {
    out.px = std::move(interleaved);
  } else {
    for (size_t i = 0; i < static_cast<size_t>(h) * w; ++i) {
      out.px[3 * i] = interleaved[i];
      out.px[3 * i + 1] = interleaved[i];
      out.px[3 * i + 2] = interleaved[i];
    }
  }
  return out;
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}

Pixels8 decode_jpeg(const std::vector<uint8_t>& bytes, const std::string& name) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;

  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    fail("io.decode", "corrupt or truncated JPEG '" + name + "'");
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  Pixels8 out;
  out.h = static_cast<int>(cinfo.output_height);
  out.w = static_cast<int>(cinfo.output_width);
  out.c = 3;
  out.px.resize(static_cast<size_t>(out.h) * out.w * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.px.data() + static_cast<size_t>(cinfo.output_scanline) * out.w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

}  // namespace

Pixels8 decode_image(const std::vector<uint8_t>& bytes, const std::string& name) {
  static const uint8_t png_magic[4] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), png_magic, 4) == 0)
    return decode_png(bytes, name);
  if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8)
    return decode_jpeg(bytes, name);
  fail("io.decode", "unsupported image format in '" + name + "'");
}

Pixels8 decode_image_file(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  require(probe.good(), "io.decode", "cannot open image '" + path + "'");
  probe.close();
  return decode_image(read_file(path), path);
}

std::vector<uint8_t> encode_png(const Pixels8& img) {
  require(img.c == 3 && img.h > 0 && img.w > 0, "io.write", "encode_png wants HxWx3");
  require(img.px.size() == static_cast<size_t>(img.h) * img.w * 3, "io.write",
          "encode_png pixel buffer size mismatch");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, "io.write", "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail("io.write", "libpng init failed");
  }

  std::vector<uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail("io.write", "PNG encode failed");
  }

  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t count) {
        auto* buf = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(p));
        buf->insert(buf->end(), data, data + count);
      },
      nullptr);

  png_set_IHDR(png, info, img.w, img.h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.h; ++y)
    png_write_row(png, const_cast<png_bytep>(img.px.data() + static_cast<size_t>(y) * img.w * 3));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const Pixels8& img, const std::string& path) {
  auto bytes = encode_png(img);
  write_file(path, bytes.data(), bytes.size());
}

}  // namespace ganfor
