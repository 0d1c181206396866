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

#ifndef STEPWISE_RENDER_RASTERIZER_H_
#define STEPWISE_RENDER_RASTERIZER_H_

#include "stepwise/render/camera.h"
#include "stepwise/render/image.h"
#include "stepwise/render/state.h"

namespace stepwise {

struct RenderSettings {
  int width = 512;
  int height = 512;
  // Sub-samples per pixel for coverage anti-aliasing.
  int samples = 8;
  // Matte gray albedo of every part.
  float albedo = 0.8f;
  float ambient = 0.2f;
  double light_elevation_deg = 45.0;
  double light_azimuth_deg = 45.0;
  bool y_up_input = true;

  // Throws ConfigError for non-positive dimensions or samples.
  void Validate() const;
};

// Deterministic z-buffered flat-shaded orthographic render. Uncovered pixels
// have alpha 0; an empty state gives a fully transparent image.
RasterImage Render(const ComposedState& state, const Camera& camera,
                   const RenderSettings& settings);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_RASTERIZER_H_
