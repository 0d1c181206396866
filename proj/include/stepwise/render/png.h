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

#ifndef STEPWISE_RENDER_PNG_H_
#define STEPWISE_RENDER_PNG_H_

#include <filesystem>

#include "stepwise/common/hash.h"
#include "stepwise/render/image.h"

namespace stepwise {

// 8-bit RGBA PNG.
Bytes EncodePng(const RasterImage& image);
// Any PNG libpng understands; images without alpha decode as opaque.
RasterImage DecodePng(std::span<const std::uint8_t> data);

// 1-bit grayscale PNG (white = foreground).
Bytes EncodeMaskPng(const BinaryMask& mask);
// Accepts 1-bit masks, grayscale (> 50% = set) and RGBA (alpha > 0.5 = set).
BinaryMask DecodeMaskPng(std::span<const std::uint8_t> data);

void WritePng(const std::filesystem::path& path, const RasterImage& image);
RasterImage ReadPng(const std::filesystem::path& path);
void WriteMaskPng(const std::filesystem::path& path, const BinaryMask& mask);
BinaryMask ReadMaskPng(const std::filesystem::path& path);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_PNG_H_
