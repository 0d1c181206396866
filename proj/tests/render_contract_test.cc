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

#include <sys/stat.h>

#include <gtest/gtest.h>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/render/contract.h"
#include "stepwise/render/png.h"
#include "test_util.h"

namespace stepwise {
namespace {

RenderRequest CubeRequest(const testing::TempDir& dir) {
  testing::WriteText(dir / "cube.obj",
                     testing::BoxObj(-0.5, -0.5, -0.5, 0.5, 0.5, 0.5));
  RenderRequest request;
  request.scale = 1.0;
  request.settings.width = 64;
  request.settings.height = 48;
  request.settings.samples = 4;
  request.views = {ViewId::kFront, ViewId::kLeft};
  RenderJob empty;
  empty.step = 0;
  empty.outputs = {{ViewId::kFront, dir / "empty_front.png"},
                   {ViewId::kLeft, dir / "empty_left.png"}};
  RenderJob cube;
  cube.step = 1;
  cube.label = "final";
  cube.meshes = {dir / "cube.obj"};
  cube.outputs = {{ViewId::kFront, dir / "cube_front.png"},
                  {ViewId::kLeft, dir / "cube_left.png"}};
  request.states = {empty, cube};
  request.response_path = dir / "response.json";
  return request;
}

void WriteExecutable(const fs::path& path, const std::string& text) {
  testing::WriteText(path, text);
  ::chmod(path.c_str(), 0755);
}

TEST(RenderContractTest, RequestJsonRoundTrip) {
  testing::TempDir dir;
  RenderRequest request = CubeRequest(dir);
  request.cameras[ViewId::kFront] =
      PresetCamera(ViewId::kFront, {0.1, 0.2, 0.3}, 1.5, 7.0);
  request.settings.y_up_input = false;
  const RenderRequest back = RenderRequestFromJson(ToJson(request));
  EXPECT_EQ(ToJson(back), ToJson(request));
  EXPECT_EQ(back.states.size(), 2u);
  EXPECT_EQ(back.states[1].label, "final");
  EXPECT_EQ(back.cameras.at(ViewId::kFront).half_extent, 1.5);
  EXPECT_FALSE(back.settings.y_up_input);

  WriteRenderRequest(dir / "req.json", request);
  EXPECT_EQ(ToJson(ReadRenderRequest(dir / "req.json")), ToJson(request));
  const auto j = ReadJsonFile(dir / "req.json");
  EXPECT_EQ(j["settings"]["background"], "transparent");
  EXPECT_EQ(j["views"], (nlohmann::json{"front", "left"}));
}

TEST(RenderContractTest, RequestRejectsBadInput) {
  testing::TempDir dir;
  auto j = ToJson(CubeRequest(dir));
  auto bad_view = j;
  bad_view["views"] = {"top"};
  EXPECT_THROW(RenderRequestFromJson(bad_view), Error);
  auto bad_size = j;
  bad_size["settings"]["width"] = 0;
  EXPECT_THROW(RenderRequestFromJson(bad_size), Error);
  auto missing = j;
  missing.erase("states");
  EXPECT_THROW(RenderRequestFromJson(missing), Error);
}

TEST(RenderContractTest, ResponseJsonRoundTrip) {
  const std::vector<RenderResult> results = {
      {0, "step", ViewId::kFront, "/a.png", "ok", ""},
      {2, "final", ViewId::kBack, "/b.png", "error", "boom"}};
  EXPECT_EQ(RenderResultsFromJson(ToJson(results)), results);
  EXPECT_THROW(RenderResultsFromJson(nlohmann::json::object()), Error);
}

TEST(RenderContractTest, BuiltinWritesEveryOutput) {
  testing::TempDir dir;
  const RenderRequest request = CubeRequest(dir);
  const auto results = ExecuteBuiltin(request);
  ASSERT_EQ(results.size(), 4u);
  for (const auto& r : results) {
    EXPECT_EQ(r.status, "ok") << r.log;
    const RasterImage image = ReadPng(r.path);
    EXPECT_EQ(image.width(), 64);
    EXPECT_EQ(image.height(), 48);
    EXPECT_EQ(image.at(0, 0).a, 0.f);
    const auto area = ForegroundMask(image).area();
    if (r.step == 0) {
      EXPECT_EQ(area, 0);
    } else {
      EXPECT_GT(area, 0);
    }
  }
}

TEST(RenderContractTest, BuiltinReportsMissingMeshAndContinues) {
  testing::TempDir dir;
  RenderRequest request = CubeRequest(dir);
  request.states[0].meshes = {dir / "missing.obj"};
  const auto results = ExecuteBuiltin(request);
  ASSERT_EQ(results.size(), 4u);
  EXPECT_EQ(results[0].status, "error");
  EXPECT_NE(results[0].log.find("missing.obj"), std::string::npos);
  EXPECT_EQ(results[2].status, "ok");
  EXPECT_TRUE(fs::exists(dir / "cube_front.png"));
}

TEST(RenderContractTest, BlenderCommandLineAndResponse) {
  testing::TempDir dir;
  const RenderRequest request = CubeRequest(dir);
  // The stub records its argv and answers with a canned response.
  const fs::path stub = dir / "fake-blender";
  WriteExecutable(stub,
                  "#!/bin/sh\n"
                  "printf '%s\\n' \"$@\" > '" + (dir / "argv.txt").string() +
                      "'\n"
                      "cat > '" + (dir / "response.json").string() +
                      "' <<'EOF'\n"
                      "{\"results\": [{\"step\": 1, \"label\": \"final\", "
                      "\"view\": \"front\", \"path\": \"x.png\", "
                      "\"status\": \"ok\"}]}\n"
                      "EOF\n"
                      "echo rendered\n");
  BlenderOptions options;
  options.executable = stub.string();
  options.adapter_script = "/opt/adapter.py";
  const fs::path req_path = dir / "request.json";
  const auto results = ExecuteBlender(request, req_path, options);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].label, "final");
  EXPECT_EQ(ReadTextFile(dir / "argv.txt"),
            "--background\n--python\n/opt/adapter.py\n--\n" +
                req_path.string() + "\n");
  EXPECT_EQ(ToJson(ReadRenderRequest(req_path)), ToJson(request));
  EXPECT_EQ(ReadTextFile(req_path.string() + ".log"), "rendered\n");
}

TEST(RenderContractTest, BlenderFailureSurfacesLog) {
  testing::TempDir dir;
  const fs::path stub = dir / "failing-blender";
  WriteExecutable(stub, "#!/bin/sh\necho 'adapter crashed' >&2\nexit 3\n");
  BlenderOptions options;
  options.executable = stub.string();
  try {
    ExecuteBlender(CubeRequest(dir), dir / "request.json", options);
    FAIL() << "expected IoError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("status 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("adapter crashed"), std::string::npos);
  }
}

TEST(RenderContractTest, BlenderMissingExecutable) {
  testing::TempDir dir;
  BlenderOptions options;
  options.executable = (dir / "no-such-blender").string();
  EXPECT_THROW(ExecuteBlender(CubeRequest(dir), dir / "request.json", options),
               Error);
}

TEST(RenderContractTest, RunProcessReturnsStatus) {
  testing::TempDir dir;
  EXPECT_EQ(RunProcess({"sh", "-c", "exit 0"}, dir / "log"), 0);
  EXPECT_EQ(RunProcess({"sh", "-c", "echo hi; exit 5"}, dir / "log"), 5);
  EXPECT_EQ(ReadTextFile(dir / "log"), "hi\n");
  EXPECT_THROW(RunProcess({}, dir / "log"), Error);
}

}  // namespace
}  // namespace stepwise
