/* Copyright 2026 The Stepwise Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef STEPWISE_RENDER_IMAGE_H_
#define STEPWISE_RENDER_IMAGE_H_

#include <array>
#include <cstdint>
#include <vector>

namespace stepwise {

// Straight (non-premultiplied) RGBA with channels in [0, 1].
struct Rgba {
  float r = 0.f;
  float g = 0.f;
  float b = 0.f;
  float a = 0.f;

  bool operator==(const Rgba&) const = default;
};

class RasterImage {
 public:
  RasterImage() = default;
  // Fully transparent image. Throws ConfigError for zero dimensions.
  RasterImage(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  const Rgba& at(int x, int y) const { return pixels_[Index(x, y)]; }
  Rgba& at(int x, int y) { return pixels_[Index(x, y)]; }

  const std::vector<Rgba>& pixels() const { return pixels_; }

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgba> pixels_;
};

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool get(int x, int y) const { return bits_[Index(x, y)] != 0; }
  void set(int x, int y, bool value) { bits_[Index(x, y)] = value ? 1 : 0; }

  // Number of set pixels.
  std::int64_t area() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const BinaryMask&) const = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline constexpr float kDefaultAlphaThreshold = 0.5f;

// Bit set iff alpha > threshold. Stands in for segmentation masks when none
// are supplied.
BinaryMask ForegroundMask(const RasterImage& image,
                          float alpha_threshold = kDefaultAlphaThreshold);

// |a AND b|. Throws ShapeError on mismatched dimensions.
std::int64_t IntersectionArea(const BinaryMask& a, const BinaryMask& b);

// Keeps only the largest 4-connected component (ties: first in raster order).
BinaryMask LargestConnectedComponent(const BinaryMask& mask);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_IMAGE_H_
