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

#include "stepwise/render/rasterizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

double RadicalInverse2(std::uint32_t k) {
  k = (k << 16) | (k >> 16);
  k = ((k & 0x00ff00ffu) << 8) | ((k & 0xff00ff00u) >> 8);
  k = ((k & 0x0f0f0f0fu) << 4) | ((k & 0xf0f0f0f0u) >> 4);
  k = ((k & 0x33333333u) << 2) | ((k & 0xccccccccu) >> 2);
  k = ((k & 0x55555555u) << 1) | ((k & 0xaaaaaaaau) >> 1);
  return static_cast<double>(k) * 0x1.0p-32;
}

struct SampleOffset {
  double x;
  double y;
};

// N-rooks pattern: one sample per column and per row of an N x N grid.
std::vector<SampleOffset> SamplePattern(int samples) {
  std::vector<SampleOffset> offsets;
  offsets.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    double y = RadicalInverse2(static_cast<std::uint32_t>(k)) + 0.5 / samples;
    if (y >= 1.0) y -= 1.0;
    offsets.push_back({(k + 0.5) / samples, y});
  }
  return offsets;
}

struct ScreenVertex {
  double x;
  double y;
  double depth;
};

}  // namespace

void RenderSettings::Validate() const {
  if (width < 1 || height < 1) {
    Throw(ErrorCode::kConfig, "render size must be >= 1x1");
  }
  if (samples < 1) Throw(ErrorCode::kConfig, "samples must be >= 1");
}

RasterImage Render(const ComposedState& state, const Camera& camera,
                   const RenderSettings& settings) {
  settings.Validate();
  const int width = settings.width;
  const int height = settings.height;
  const int samples = settings.samples;
  RasterImage image(width, height);
  if (state.meshes.empty()) return image;

  const Vec3 forward = camera.Forward();
  const Vec3 right = camera.Right();
  const Vec3 up = camera.TrueUp();
  const double half_h = camera.half_extent;
  const double half_w = camera.half_extent * width / height;

  constexpr double kDegToRad = std::numbers::pi / 180.0;
  const double el = settings.light_elevation_deg * kDegToRad;
  const double az = settings.light_azimuth_deg * kDegToRad;
  const Vec3 to_light =
      Normalized(forward * (-std::cos(el) * std::cos(az)) +
                 right * (std::cos(el) * std::sin(az)) + up * std::sin(el));

  const std::vector<SampleOffset> pattern = SamplePattern(samples);
  const std::size_t buffer_size =
      static_cast<std::size_t>(width) * height * samples;
  std::vector<double> depth(buffer_size,
                            std::numeric_limits<double>::infinity());
  std::vector<float> shade(buffer_size, -1.f);

  auto project = [&](const Vec3& model) {
    const Vec3 w = ToWorld(model, settings.y_up_input) - camera.target;
    return ScreenVertex{(Dot(w, right) / half_w + 1.0) * 0.5 * width,
                        (1.0 - Dot(w, up) / half_h) * 0.5 * height,
                        Dot(w, forward)};
  };

  for (const TriangleMesh& mesh : state.meshes) {
    for (const auto& tri : mesh.triangles) {
      const Vec3& a = mesh.vertices[tri[0]];
      const Vec3& b = mesh.vertices[tri[1]];
      const Vec3& c = mesh.vertices[tri[2]];
      Vec3 normal = Normalized(Cross(ToWorld(b, settings.y_up_input) -
                                         ToWorld(a, settings.y_up_input),
                                     ToWorld(c, settings.y_up_input) -
                                         ToWorld(a, settings.y_up_input)));
      if (Length(normal) == 0.0) continue;
      if (Dot(normal, forward) > 0.0) normal = normal * -1.0;
      const float tone = static_cast<float>(
          settings.albedo * (settings.ambient + (1.0 - settings.ambient) *
                                                    std::max(0.0, Dot(normal,
                                                                      to_light))));

      const ScreenVertex p0 = project(a);
      const ScreenVertex p1 = project(b);
      const ScreenVertex p2 = project(c);
      const double area =
          (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
      if (std::abs(area) < 1e-12) continue;

      const int x_begin = std::max(
          0, static_cast<int>(std::floor(std::min({p0.x, p1.x, p2.x}))));
      const int x_end = std::min(
          width - 1, static_cast<int>(std::floor(std::max({p0.x, p1.x, p2.x}))));
      const int y_begin = std::max(
          0, static_cast<int>(std::floor(std::min({p0.y, p1.y, p2.y}))));
      const int y_end = std::min(
          height - 1,
          static_cast<int>(std::floor(std::max({p0.y, p1.y, p2.y}))));
      const double inv_area = 1.0 / area;

      for (int py = y_begin; py <= y_end; ++py) {
        for (int px = x_begin; px <= x_end; ++px) {
          const std::size_t base =
              (static_cast<std::size_t>(py) * width + px) * samples;
          for (int k = 0; k < samples; ++k) {
            const double sx = px + pattern[k].x;
            const double sy = py + pattern[k].y;
            const double w0 = ((p2.x - p1.x) * (sy - p1.y) -
                               (p2.y - p1.y) * (sx - p1.x)) * inv_area;
            const double w1 = ((p0.x - p2.x) * (sy - p2.y) -
                               (p0.y - p2.y) * (sx - p2.x)) * inv_area;
            const double w2 = 1.0 - w0 - w1;
            if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
            const double z = w0 * p0.depth + w1 * p1.depth + w2 * p2.depth;
            const std::size_t idx = base + static_cast<std::size_t>(k);
            if (z < depth[idx]) {
              depth[idx] = z;
              shade[idx] = tone;
            }
          }
        }
      }
    }
  }

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t base =
          (static_cast<std::size_t>(y) * width + x) * samples;
      int covered = 0;
      double total = 0.0;
      for (int k = 0; k < samples; ++k) {
        if (shade[base + k] >= 0.f) {
          ++covered;
          total += shade[base + k];
        }
      }
      if (covered == 0) continue;
      const float gray = static_cast<float>(total / covered);
      image.at(x, y) = {gray, gray, gray,
                        static_cast<float>(covered) / samples};
    }
  }
  return image;
}

}  // namespace stepwise
