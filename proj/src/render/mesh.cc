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

#include "stepwise/render/mesh.h"

#include <charconv>
#include <cmath>
#include <string>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

[[noreturn]] void ParseFailure(const std::filesystem::path& path,
                               std::size_t line, const std::string& what) {
  Throw(ErrorCode::kParse, (path.empty() ? std::string("<obj>")
                                         : path.string()) +
                               ":" + std::to_string(line) + ": " + what);
}

double ParseCoordinate(const std::string& token,
                       const std::filesystem::path& path, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    ParseFailure(path, line, "non-numeric vertex coordinate '" + token + "'");
  }
  return value;
}

std::uint32_t ResolveIndex(const std::string& token, std::size_t vertex_count,
                           const std::filesystem::path& path,
                           std::size_t line) {
  const std::string head = token.substr(0, token.find('/'));
  long long index = 0;
  const auto [ptr, ec] =
      std::from_chars(head.data(), head.data() + head.size(), index);
  if (head.empty() || ec != std::errc() || ptr != head.data() + head.size()) {
    ParseFailure(path, line, "invalid face index '" + token + "'");
  }
  long long resolved = index > 0 ? index - 1
                                 : static_cast<long long>(vertex_count) + index;
  if (index == 0 || resolved < 0 ||
      resolved >= static_cast<long long>(vertex_count)) {
    ParseFailure(path, line, "face index out of range '" + token + "'");
  }
  return static_cast<std::uint32_t>(resolved);
}

}  // namespace

double TriangleMesh::SurfaceArea() const {
  double area = 0.0;
  for (const auto& tri : triangles) {
    const Vec3& a = vertices[tri[0]];
    area += 0.5 * Length(Cross(vertices[tri[1]] - a, vertices[tri[2]] - a));
  }
  return area;
}

TriangleMesh ParseObj(std::string_view text,
                      const std::filesystem::path& source_path) {
  TriangleMesh mesh;
  mesh.source_path = source_path;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string line(text.substr(start, end - start));
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::vector<std::string> tokens = SplitWhitespace(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "v") {
      // Optional fourth (w) and vertex colours are tolerated and ignored.
      if (tokens.size() < 4) {
        ParseFailure(source_path, line_number, "vertex needs 3 coordinates");
      }
      mesh.vertices.push_back(
          {ParseCoordinate(tokens[1], source_path, line_number),
           ParseCoordinate(tokens[2], source_path, line_number),
           ParseCoordinate(tokens[3], source_path, line_number)});
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        ParseFailure(source_path, line_number, "face needs >= 3 vertices");
      }
      std::vector<std::uint32_t> polygon;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        polygon.push_back(ResolveIndex(tokens[i], mesh.vertices.size(),
                                       source_path, line_number));
      }
      for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
        mesh.triangles.push_back({polygon[0], polygon[i], polygon[i + 1]});
      }
    }
    if (end == text.size()) break;
  }
  return mesh;
}

TriangleMesh LoadMesh(const std::filesystem::path& path) {
  return ParseObj(ReadTextFile(path), path);
}

}  // namespace stepwise
