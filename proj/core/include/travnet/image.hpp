#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "travnet/tensor.hpp"

namespace travnet::img {

// 8-bit interleaved RGB image (HWC).
struct Image8 {
  int width = 0, height = 0, channels = 3;
  std::vector<std::uint8_t> pixels;  // size = width * height * channels

  std::uint8_t& at(int y, int x, int c) {
    return pixels[static_cast<std::size_t>((y * width + x) * channels + c)];
  }
  std::uint8_t at(int y, int x, int c) const {
    return pixels[static_cast<std::size_t>((y * width + x) * channels + c)];
  }
};

Image8 read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image8& image);

// Bilinear resize (HWC, any channel count).
Image8 resize_bilinear(const Image8& src, int out_w, int out_h);

// 8-bit [0,255] <-> float [-1,1] planar CHW conversions.
nn::Tensor<float> to_chw_float(const Image8& src);
Image8 from_chw_float(const nn::Tensor<float>& chw);

// CRC32 of a file's bytes (manifest checksums).
std::uint32_t file_crc32(const std::filesystem::path& path);

// Raw float32 array dump (little-endian, row-major).
void write_f32(const std::filesystem::path& path, const float* data,
               std::size_t count);

}  // namespace travnet::img
