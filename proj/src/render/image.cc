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

#include "stepwise/render/image.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

void CheckDimensions(int width, int height) {
  if (width < 1 || height < 1) {
    Throw(ErrorCode::kConfig, "image dimensions must be >= 1, got " +
                                  std::to_string(width) + "x" +
                                  std::to_string(height));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height)
    : width_(width), height_(height) {
  CheckDimensions(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, Rgba{});
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  CheckDimensions(width, height);
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

std::int64_t BinaryMask::area() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
}

BinaryMask ForegroundMask(const RasterImage& image, float alpha_threshold) {
  BinaryMask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      mask.set(x, y, image.at(x, y).a > alpha_threshold);
    }
  }
  return mask;
}

std::int64_t IntersectionArea(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    Throw(ErrorCode::kShape,
          "mask dimensions differ: " + std::to_string(a.width()) + "x" +
              std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
              "x" + std::to_string(b.height()));
  }
  std::int64_t count = 0;
  for (std::size_t i = 0; i < a.bits().size(); ++i) {
    count += a.bits()[i] & b.bits()[i];
  }
  return count;
}

BinaryMask LargestConnectedComponent(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::int64_t> sizes;
  std::vector<int> stack;
  for (int start = 0; start < w * h; ++start) {
    if (!mask.bits()[static_cast<std::size_t>(start)] || label[start] >= 0) {
      continue;
    }
    const int id = static_cast<int>(sizes.size());
    std::int64_t size = 0;
    stack.push_back(start);
    label[start] = id;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      ++size;
      const int x = p % w;
      const int y = p / w;
      const int neighbours[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1},
                                    {x, y + 1}};
      for (const auto& n : neighbours) {
        if (n[0] < 0 || n[0] >= w || n[1] < 0 || n[1] >= h) continue;
        const int q = n[1] * w + n[0];
        if (mask.bits()[static_cast<std::size_t>(q)] && label[q] < 0) {
          label[q] = id;
          stack.push_back(q);
        }
      }
    }
    sizes.push_back(size);
  }
  BinaryMask out(w, h);
  if (sizes.empty()) return out;
  const int best = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (int p = 0; p < w * h; ++p) {
    if (label[p] == best) out.set(p % w, p / w, true);
  }
  return out;
}

}  // namespace stepwise
