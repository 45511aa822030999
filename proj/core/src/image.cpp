#include "travnet/image.hpp"

#include <png.h>
#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "travnet/common.hpp"

namespace travnet::img {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image8 read_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail_io("cannot open image for reading: " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail_io("libpng initialization failed reading " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail_io("corrupt or unreadable image: " + path.string());
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  png_byte color = png_get_color_type(png, info);
  png_byte depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  Image8 out;
  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  out.channels = 3;
  out.pixels.resize(static_cast<std::size_t>(w) * h * 3);

  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y)
    rows[y] = out.pixels.data() + static_cast<std::size_t>(y) * w * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void write_png(const std::filesystem::path& path, const Image8& image) {
  if (image.channels != 3)
    fail_contract("write_png expects 3-channel images");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) fail_io("cannot open image for writing: " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    fail_io("libpng initialization failed writing " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail_io("failed to write image: " + path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_const_bytep> rows(static_cast<std::size_t>(image.height));
  for (int y = 0; y < image.height; ++y)
    rows[static_cast<std::size_t>(y)] =
        image.pixels.data() + static_cast<std::size_t>(y) * image.width * 3;
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image8 resize_bilinear(const Image8& src, int out_w, int out_h) {
  if (src.width < 1 || src.height < 1)
    fail_contract("resize_bilinear: empty source image");
  Image8 out;
  out.width = out_w;
  out.height = out_h;
  out.channels = src.channels;
  out.pixels.resize(static_cast<std::size_t>(out_w) * out_h * src.channels);

  const double sx = static_cast<double>(src.width) / out_w;
  const double sy = static_cast<double>(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    const double wy = fy - y0;
    int y1 = y0 + 1;
    y0 = std::clamp(y0, 0, src.height - 1);
    y1 = std::clamp(y1, 0, src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      const double wx = fx - x0;
      int x1 = x0 + 1;
      x0 = std::clamp(x0, 0, src.width - 1);
      x1 = std::clamp(x1, 0, src.width - 1);
      for (int c = 0; c < src.channels; ++c) {
        const double v = (1 - wy) * ((1 - wx) * src.at(y0, x0, c) + wx * src.at(y0, x1, c)) +
                         wy * ((1 - wx) * src.at(y1, x0, c) + wx * src.at(y1, x1, c));
        out.at(y, x, c) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

nn::Tensor<float> to_chw_float(const Image8& src) {
  nn::Tensor<float> out({src.channels, src.height, src.width});
  const std::int64_t plane = static_cast<std::int64_t>(src.height) * src.width;
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x)
      for (int c = 0; c < src.channels; ++c)
        out[c * plane + y * src.width + x] =
            static_cast<float>(src.at(y, x, c)) / 127.5f - 1.0f;
  return out;
}

Image8 from_chw_float(const nn::Tensor<float>& chw) {
  if (chw.rank() != 3) fail_contract("from_chw_float expects a [C,H,W] tensor");
  Image8 out;
  out.channels = chw.dim(0);
  out.height = chw.dim(1);
  out.width = chw.dim(2);
  out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * out.channels);
  const std::int64_t plane = static_cast<std::int64_t>(out.height) * out.width;
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < out.channels; ++c) {
        const float v = (chw[c * plane + y * out.width + x] + 1.0f) * 127.5f;
        out.at(y, x, c) =
            static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 255.0f)));
      }
  return out;
}

std::uint32_t file_crc32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open for checksum: " + path.string());
  std::uint32_t crc = static_cast<std::uint32_t>(crc32(0L, Z_NULL, 0));
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    if (got > 0)
      crc = static_cast<std::uint32_t>(
          crc32(crc, reinterpret_cast<const Bytef*>(buf), static_cast<uInt>(got)));
  }
  return crc;
}

void write_f32(const std::filesystem::path& path, const float* data,
               std::size_t count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(float)));
  if (!out) fail_io("short write: " + path.string());
}

}  // namespace travnet::img
