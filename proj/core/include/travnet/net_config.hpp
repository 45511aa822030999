#pragma once

#include <string>

#include "travnet/common.hpp"

namespace travnet::nn {

// Shared geometry for the generator / discriminator / inverse-generator
// family. The default is the production configuration: 128x128 images, a
// 64-128-256-512 channel ladder and a 100-dim latent code, which puts the
// discriminator feature tap at 8x8x512 = 32768. Smaller configurations are
// used for gradient checks and fast tests.
struct NetConfig {
  int image_size = 128;  // square input, halved by each block
  int channels = 3;      // 3 = mono RGB, 6 = stereo pair
  int base_width = 64;   // feature maps after the first downsampling block
  int z_dim = 100;       // latent code dimensionality
  int blocks = 4;        // downsampling / upsampling blocks

  int head_spatial() const { return image_size >> blocks; }
  int top_width() const { return base_width << (blocks - 1); }
  int feature_dim() const {
    return head_spatial() * head_spatial() * top_width();
  }
  int image_elems() const { return channels * image_size * image_size; }

  void validate() const {
    if (blocks < 1) fail_config("net config: blocks must be >= 1");
    if (image_size < (1 << (blocks + 1)))
      fail_config("net config: image_size " + std::to_string(image_size) +
                  " too small for " + std::to_string(blocks) + " blocks");
    if ((image_size & (image_size - 1)) != 0)
      fail_config("net config: image_size must be a power of two");
    if (channels != 3 && channels != 6)
      fail_config("net config: channels must be 3 or 6");
    if (base_width < 1 || z_dim < 1)
      fail_config("net config: base_width and z_dim must be positive");
  }

  bool operator==(const NetConfig&) const = default;

  std::string describe() const {
    return std::to_string(image_size) + "x" + std::to_string(image_size) + "x" +
           std::to_string(channels) + " base=" + std::to_string(base_width) +
           " z=" + std::to_string(z_dim) + " blocks=" + std::to_string(blocks);
  }
};

}  // namespace travnet::nn
