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

#include "stepwise/render/contract.h"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstring>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/render/png.h"
#include "stepwise/render/state.h"

extern char** environ;

namespace stepwise {
namespace {

nlohmann::json VecJson(const Vec3& v) { return {v.x, v.y, v.z}; }

Vec3 VecFromJson(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

ViewId RequireView(const std::string& name) {
  const auto view = ParseViewId(name);
  if (!view) Throw(ErrorCode::kParse, "unknown view id '" + name + "'");
  return *view;
}

}  // namespace

nlohmann::json ToJson(const RenderRequest& request) {
  nlohmann::json views = nlohmann::json::array();
  for (ViewId v : request.views) views.push_back(ViewName(v));
  nlohmann::json cameras = nlohmann::json::object();
  for (const auto& [view, cam] : request.cameras) {
    cameras[std::string(ViewName(view))] = {
        {"position", VecJson(cam.position)},
        {"target", VecJson(cam.target)},
        {"up", VecJson(cam.up)},
        {"projection", cam.kind == ProjectionKind::kOrthographic
                           ? "orthographic"
                           : "perspective"},
        {"half_extent", cam.half_extent}};
  }
  nlohmann::json states = nlohmann::json::array();
  for (const RenderJob& job : request.states) {
    nlohmann::json meshes = nlohmann::json::array();
    for (const auto& m : job.meshes) meshes.push_back(m.generic_string());
    nlohmann::json outputs = nlohmann::json::object();
    for (const auto& [view, path] : job.outputs) {
      outputs[std::string(ViewName(view))] = path.generic_string();
    }
    states.push_back({{"step", job.step},
                      {"label", job.label},
                      {"meshes", meshes},
                      {"outputs", outputs}});
  }
  const RenderSettings& s = request.settings;
  return {{"version", request.version},
          {"scale", request.scale},
          {"settings",
           {{"width", s.width},
            {"height", s.height},
            {"samples", s.samples},
            {"background", "transparent"},
            {"material", "uniform_gray"},
            {"albedo", s.albedo},
            {"ambient", s.ambient},
            {"light_elevation_deg", s.light_elevation_deg},
            {"light_azimuth_deg", s.light_azimuth_deg},
            {"y_up_input", s.y_up_input}}},
          {"views", views},
          {"cameras", cameras},
          {"states", states},
          {"response_path", request.response_path.generic_string()}};
}

RenderRequest RenderRequestFromJson(const nlohmann::json& j) {
  try {
    RenderRequest request;
    request.version = j.value("version", 1);
    request.scale = j.value("scale", kDefaultAssemblyScale);
    const auto& s = j.at("settings");
    request.settings.width = s.at("width").get<int>();
    request.settings.height = s.at("height").get<int>();
    request.settings.samples = s.at("samples").get<int>();
    request.settings.albedo = s.value("albedo", request.settings.albedo);
    request.settings.ambient = s.value("ambient", request.settings.ambient);
    request.settings.light_elevation_deg =
        s.value("light_elevation_deg", request.settings.light_elevation_deg);
    request.settings.light_azimuth_deg =
        s.value("light_azimuth_deg", request.settings.light_azimuth_deg);
    request.settings.y_up_input =
        s.value("y_up_input", request.settings.y_up_input);
    request.settings.Validate();
    request.views.clear();
    for (const auto& v : j.at("views")) {
      request.views.push_back(RequireView(v.get<std::string>()));
    }
    if (j.contains("cameras")) {
      for (const auto& [name, c] : j.at("cameras").items()) {
        Camera cam;
        cam.view = RequireView(name);
        cam.position = VecFromJson(c.at("position"));
        cam.target = VecFromJson(c.at("target"));
        cam.up = VecFromJson(c.at("up"));
        cam.kind = c.value("projection", std::string("orthographic")) ==
                           "perspective"
                       ? ProjectionKind::kPerspective
                       : ProjectionKind::kOrthographic;
        cam.half_extent = c.at("half_extent").get<double>();
        request.cameras[cam.view] = cam;
      }
    }
    for (const auto& state : j.at("states")) {
      RenderJob job;
      job.step = state.at("step").get<int>();
      job.label = state.value("label", std::string("step"));
      for (const auto& m : state.at("meshes")) {
        job.meshes.emplace_back(m.get<std::string>());
      }
      for (const auto& [name, path] : state.at("outputs").items()) {
        job.outputs[RequireView(name)] = path.get<std::string>();
      }
      request.states.push_back(std::move(job));
    }
    request.response_path = j.value("response_path", std::string());
    return request;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("render request: ") + e.what());
  }
}

void WriteRenderRequest(const std::filesystem::path& path,
                        const RenderRequest& request) {
  WriteJsonFile(path, ToJson(request));
}

RenderRequest ReadRenderRequest(const std::filesystem::path& path) {
  return RenderRequestFromJson(ReadJsonFile(path));
}

nlohmann::json ToJson(const std::vector<RenderResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const RenderResult& r : results) {
    out.push_back({{"step", r.step},
                   {"label", r.label},
                   {"view", ViewName(r.view)},
                   {"path", r.path.generic_string()},
                   {"status", r.status},
                   {"log", r.log}});
  }
  return {{"results", out}};
}

std::vector<RenderResult> RenderResultsFromJson(const nlohmann::json& j) {
  try {
    std::vector<RenderResult> results;
    for (const auto& r : j.at("results")) {
      results.push_back({r.at("step").get<int>(),
                         r.value("label", std::string("step")),
                         RequireView(r.at("view").get<std::string>()),
                         r.at("path").get<std::string>(),
                         r.at("status").get<std::string>(),
                         r.value("log", std::string())});
    }
    return results;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("render response: ") + e.what());
  }
}

std::vector<RenderResult> ExecuteBuiltin(const RenderRequest& request) {
  request.settings.Validate();
  std::map<std::filesystem::path, TriangleMesh> cache;
  auto compose = [&](const RenderJob& job) {
    ComposedState state;
    state.step = job.step;
    state.scale = request.scale;
    for (const auto& path : job.meshes) {
      auto it = cache.find(path);
      if (it == cache.end()) it = cache.emplace(path, LoadMesh(path)).first;
      TriangleMesh placed = it->second;
      for (Vec3& v : placed.vertices) v = v * request.scale;
      state.meshes.push_back(std::move(placed));
    }
    return state;
  };

  std::map<ViewId, Camera> cameras = request.cameras;
  if (cameras.size() < request.views.size() && !request.states.empty()) {
    const auto largest = std::max_element(
        request.states.begin(), request.states.end(),
        [](const RenderJob& a, const RenderJob& b) {
          return a.meshes.size() < b.meshes.size();
        });
    ComposedState reference;
    try {
      reference = compose(*largest);
    } catch (const Error&) {
      // Leave the reference empty; per-job errors are reported below.
    }
    const double aspect = static_cast<double>(request.settings.width) /
                          request.settings.height;
    for (ViewId view : request.views) {
      if (!cameras.count(view)) {
        cameras[view] = FitCamera(view, reference, request.settings.y_up_input,
                                  kDefaultFill, aspect);
      }
    }
  }

  std::vector<RenderResult> results;
  for (const RenderJob& job : request.states) {
    ComposedState state;
    std::string failure;
    try {
      state = compose(job);
    } catch (const Error& e) {
      failure = e.what();
    }
    for (ViewId view : request.views) {
      RenderResult result{job.step, job.label, view, {}, "ok", ""};
      const auto out = job.outputs.find(view);
      if (out != job.outputs.end()) result.path = out->second;
      if (!failure.empty()) {
        result.status = "error";
        result.log = failure;
      } else {
        try {
          const RasterImage image =
              Render(state, cameras.at(view), request.settings);
          if (!result.path.empty()) WritePng(result.path, image);
        } catch (const Error& e) {
          result.status = "error";
          result.log = e.what();
        }
      }
      results.push_back(std::move(result));
    }
  }
  return results;
}

int RunProcess(const std::vector<std::string>& argv,
               const std::filesystem::path& log_path) {
  if (argv.empty()) Throw(ErrorCode::kUsage, "empty command line");
  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  if (!log_path.empty()) {
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log_path.c_str(),
                                     O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  }
  pid_t pid = 0;
  const int rc =
      posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    Throw(ErrorCode::kIo, "cannot launch '" + argv[0] + "': " +
                              std::string(std::strerror(rc)));
  }
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) {
    Throw(ErrorCode::kIo, "waitpid failed for '" + argv[0] + "'");
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

std::vector<RenderResult> ExecuteBlender(
    const RenderRequest& request, const std::filesystem::path& request_path,
    const BlenderOptions& options) {
  RenderRequest copy = request;
  if (copy.response_path.empty()) {
    copy.response_path = request_path.string() + ".response.json";
  }
  WriteRenderRequest(request_path, copy);
  const std::filesystem::path log =
      options.log_path.empty()
          ? std::filesystem::path(request_path.string() + ".log")
          : options.log_path;
  const int status = RunProcess({options.executable, "--background", "--python",
                                 options.adapter_script.string(), "--",
                                 request_path.string()},
                                log);
  if (status != 0) {
    std::string excerpt;
    try {
      excerpt = ReadTextFile(log);
      if (excerpt.size() > 2000) excerpt = excerpt.substr(excerpt.size() - 2000);
    } catch (const Error&) {
    }
    Throw(ErrorCode::kIo, "render adapter exited with status " +
                              std::to_string(status) + ": " + excerpt);
  }
  return RenderResultsFromJson(ReadJsonFile(copy.response_path));
}

}  // namespace stepwise
