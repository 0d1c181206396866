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

#include "stepwise/common/file_io.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

void RequireFile(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    Throw(ErrorCode::kNotFound, "file not found: " + path.string());
  }
}

fs::path TempSibling(const fs::path& path) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream name;
  name << path.filename().string() << ".tmp."
       << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
       << counter++;
  return path.parent_path() / name.str();
}

}  // namespace

std::string ReadTextFile(const fs::path& path) {
  RequireFile(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) Throw(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Bytes ReadBinaryFile(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  return Bytes(text.begin(), text.end());
}

nlohmann::json ReadJsonFile(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Throw(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void WriteFileAtomic(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) {
    Throw(ErrorCode::kIo, "cannot create directory " +
                              path.parent_path().string() + ": " +
                              ec.message());
  }
  const fs::path temp = TempSibling(path);
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) Throw(ErrorCode::kIo, "cannot write " + temp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) Throw(ErrorCode::kIo, "short write to " + temp.string());
  }
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    Throw(ErrorCode::kIo, "cannot rename into " + path.string());
  }
}

void WriteFileAtomic(const fs::path& path, std::span<const std::uint8_t> data) {
  WriteFileAtomic(path, std::string_view(
                            reinterpret_cast<const char*>(data.data()),
                            data.size()));
}

void WriteJsonFile(const fs::path& path, const nlohmann::json& value) {
  WriteFileAtomic(path, value.dump(2) + "\n");
}

}  // namespace stepwise
