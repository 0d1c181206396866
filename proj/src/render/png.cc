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

#include "stepwise/render/png.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"

namespace stepwise {
namespace {

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void PngErrorFn(png_structp png, png_const_charp message) {
  auto* error = static_cast<std::string*>(png_get_error_ptr(png));
  if (error) *error = message;
  png_longjmp(png, 1);
}

void PngWarningFn(png_structp, png_const_charp) {}

void WriteToVector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void FlushNoop(png_structp) {}

void ReadFromCursor(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->data.size()) {
    png_error(png, "truncated PNG data");
  }
  std::memcpy(out, cursor->data.data() + cursor->offset, length);
  cursor->offset += length;
}

std::uint8_t ToByte(float v) {
  return static_cast<std::uint8_t>(
      std::lround(std::clamp(v, 0.f, 1.f) * 255.f));
}

Bytes Encode(int width, int height, int bit_depth, int color_type,
             const std::vector<std::vector<std::uint8_t>>& rows) {
  Bytes out;
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error,
                                            PngErrorFn, PngWarningFn);
  if (!png) Throw(ErrorCode::kIo, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    Throw(ErrorCode::kIo, "PNG encode failed: " + error);
  }
  png_set_write_fn(png, &out, WriteToVector, FlushNoop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (const auto& row : rows) png_write_row(png, row.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

struct DecodedPng {
  int width = 0;
  int height = 0;
  bool has_alpha = false;
  std::vector<std::uint8_t> rgba;  // 4 bytes per pixel
};

DecodedPng Decode(std::span<const std::uint8_t> data) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) {
    Throw(ErrorCode::kParse, "not a PNG stream");
  }
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error,
                                           PngErrorFn, PngWarningFn);
  if (!png) Throw(ErrorCode::kIo, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  ReadCursor cursor{data, 0};
  DecodedPng decoded;
  std::vector<png_bytep> rows;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    Throw(ErrorCode::kParse, "PNG decode failed: " + error);
  }
  png_set_read_fn(png, &cursor, ReadFromCursor);
  png_read_info(png, info);
  const png_byte color_type = png_get_color_type(png, info);
  decoded.has_alpha = (color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
                      png_get_valid(png, info, PNG_INFO_tRNS);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_gray_to_rgb(png);
  png_set_filler(png, 0xff, PNG_FILLER_AFTER);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  decoded.width = static_cast<int>(png_get_image_width(png, info));
  decoded.height = static_cast<int>(png_get_image_height(png, info));
  const std::size_t stride = png_get_rowbytes(png, info);
  if (stride != static_cast<std::size_t>(decoded.width) * 4) {
    png_error(png, "unexpected row layout");
  }
  decoded.rgba.resize(stride * static_cast<std::size_t>(decoded.height));
  rows.resize(static_cast<std::size_t>(decoded.height));
  for (int y = 0; y < decoded.height; ++y) {
    rows[static_cast<std::size_t>(y)] = decoded.rgba.data() + stride * y;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return decoded;
}

}  // namespace

Bytes EncodePng(const RasterImage& image) {
  std::vector<std::vector<std::uint8_t>> rows(
      static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.reserve(static_cast<std::size_t>(image.width()) * 4);
    for (int x = 0; x < image.width(); ++x) {
      const Rgba& p = image.at(x, y);
      row.push_back(ToByte(p.r));
      row.push_back(ToByte(p.g));
      row.push_back(ToByte(p.b));
      row.push_back(ToByte(p.a));
    }
  }
  return Encode(image.width(), image.height(), 8, PNG_COLOR_TYPE_RGBA, rows);
}

RasterImage DecodePng(std::span<const std::uint8_t> data) {
  const DecodedPng decoded = Decode(data);
  RasterImage image(decoded.width, decoded.height);
  for (int y = 0; y < decoded.height; ++y) {
    for (int x = 0; x < decoded.width; ++x) {
      const std::uint8_t* p =
          decoded.rgba.data() + (static_cast<std::size_t>(y) * decoded.width + x) * 4;
      image.at(x, y) = {p[0] / 255.f, p[1] / 255.f, p[2] / 255.f,
                        p[3] / 255.f};
    }
  }
  return image;
}

Bytes EncodeMaskPng(const BinaryMask& mask) {
  std::vector<std::vector<std::uint8_t>> rows(
      static_cast<std::size_t>(mask.height()));
  const std::size_t stride = (static_cast<std::size_t>(mask.width()) + 7) / 8;
  for (int y = 0; y < mask.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.assign(stride, 0);
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.get(x, y)) {
        row[static_cast<std::size_t>(x) / 8] |=
            static_cast<std::uint8_t>(0x80u >> (x % 8));
      }
    }
  }
  return Encode(mask.width(), mask.height(), 1, PNG_COLOR_TYPE_GRAY, rows);
}

BinaryMask DecodeMaskPng(std::span<const std::uint8_t> data) {
  const DecodedPng decoded = Decode(data);
  BinaryMask mask(decoded.width, decoded.height);
  for (int y = 0; y < decoded.height; ++y) {
    for (int x = 0; x < decoded.width; ++x) {
      const std::uint8_t* p =
          decoded.rgba.data() + (static_cast<std::size_t>(y) * decoded.width + x) * 4;
      mask.set(x, y, decoded.has_alpha ? p[3] > 127 : p[0] > 127);
    }
  }
  return mask;
}

void WritePng(const std::filesystem::path& path, const RasterImage& image) {
  WriteFileAtomic(path, EncodePng(image));
}

RasterImage ReadPng(const std::filesystem::path& path) {
  try {
    return DecodePng(ReadBinaryFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) {
      Throw(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    throw;
  }
}

void WriteMaskPng(const std::filesystem::path& path, const BinaryMask& mask) {
  WriteFileAtomic(path, EncodeMaskPng(mask));
}

BinaryMask ReadMaskPng(const std::filesystem::path& path) {
  try {
    return DecodeMaskPng(ReadBinaryFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) {
      Throw(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    throw;
  }
}

}  // namespace stepwise
