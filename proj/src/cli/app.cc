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

#include "stepwise/cli/app.h"

#include <chrono>
#include <functional>

#include <CLI11.hpp>

#include "stepwise/cli/manifest.h"
#include "stepwise/cli/stages.h"
#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"

namespace stepwise {
namespace {

struct StageSpec {
  std::string name;
  std::function<StageOutput()> run;
};

nlohmann::json ErrorJson(std::string_view code, const std::string& message,
                         const std::string& stage) {
  nlohmann::json e = {{"code", code}, {"message", message}};
  if (!stage.empty()) e["stage"] = stage;
  return {{"error", e}};
}

StageRecord RunStage(const StageSpec& stage, const Workspace& ws) {
  StageRecord record;
  record.name = stage.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    StageOutput out = stage.run();
    record.status = "ok";
    record.summary = std::move(out.summary);
    record.outputs = HashFiles(ws.root(), out.files);
    record.output_hash = CombinedHash(record.outputs);
  } catch (const Error& e) {
    record.status = "failed";
    record.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  RunOptions opt;
  std::string views = "front";
  std::string only_id;
  std::filesystem::path compare;
  StatsInputs stats;
  AuditInputs audit;
  bool z_up = false;
  bool no_cache = false;

  CLI::App app{"Assembly trace construction and evaluation toolkit", "stepwise"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--workdir", opt.workdir, "Output root");
  app.add_option("--input", opt.input, "Asset directory (curate, pipeline)");
  app.add_option("--seed", opt.seed, "Seed for splits, shuffles and bootstrap");
  app.add_option("--jobs", opt.jobs, "Parallel assets")->check(CLI::PositiveNumber);
  app.add_flag("--strict", opt.strict, "Treat validation findings as failures");
  app.add_option("--scheduler-config", opt.scheduler_config, "Key-value scheduler config");
  app.add_option("--max-batch", opt.max_batch, "Per-category cap, <category>=<n>");
  app.add_option("--renderer", opt.renderer)->check(CLI::IsMember({"builtin", "blender"}));
  app.add_option("--blender", opt.blender, "Blender executable");
  app.add_option("--adapter", opt.adapter, "Blender adapter script");
  app.add_option("--width", opt.render.width)->check(CLI::PositiveNumber);
  app.add_option("--height", opt.render.height)->check(CLI::PositiveNumber);
  app.add_option("--samples", opt.render.samples)->check(CLI::PositiveNumber);
  app.add_flag("--z-up", z_up, "Input meshes are Z-up");
  app.add_option("--views", views, "Comma-separated views: front,left,right,back");
  app.add_option("--annotator", opt.annotator)->check(CLI::IsMember({"mock", "endpoint"}));
  app.add_option("--judge", opt.judge)->check(CLI::IsMember({"mock", "endpoint"}));
  app.add_option("--endpoint-url", opt.endpoint.base_url);
  app.add_option("--endpoint-path", opt.endpoint.path);
  app.add_option("--model", opt.endpoint.model);
  app.add_option("--credential-env", opt.endpoint.credential_env);
  app.add_option("--timeout", opt.endpoint.timeout_s);
  app.add_option("--max-retries", opt.endpoint.max_retries);
  app.add_option("--max-in-flight", opt.endpoint.max_in_flight);
  app.add_option("--rps", opt.endpoint.requests_per_second);
  app.add_flag("--no-cache", no_cache, "Bypass the response caches");
  app.add_flag("--self-consistency", opt.self_consistency, "Vote instead of logscores");
  app.add_option("--votes", opt.votes)->check(CLI::PositiveNumber);
  app.add_flag("--largest-component", opt.largest_component,
               "Keep the largest connected component of each mask");
  app.add_option("--pack-expected", opt.packing.expected);
  app.add_option("--pack-cap", opt.packing.cap);
  app.add_option("--pack-low-water", opt.packing.low_water);
  app.add_flag("--pack-shuffle", opt.shuffle_packing);
  app.add_option("--split-manifest", opt.split_manifest);
  app.add_option("--spec", opt.spec_file, "Pre-parsed instruction spec");

  std::map<std::string, std::function<StageOutput()>> stages;
  auto bind = [&](const std::string& name, const std::string& help,
                  std::function<StageOutput(const Workspace&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    stages[name] = [&opt, fn] { return fn(Workspace(opt.workdir)); };
    return sub;
  };
  bind("curate", "Scan, deduplicate and validate assets",
       [&](const Workspace& w) { return RunCurate(opt, w); });
  bind("schedule", "Build assembly schedules",
       [&](const Workspace& w) { return RunSchedule(opt, w); });
  bind("render", "Render step states and masks",
       [&](const Workspace& w) { return RunRender(opt, w); });
  bind("annotate", "Generate goal prompts and step rationales",
       [&](const Workspace& w) { return RunAnnotate(opt, w); });
  bind("pack", "Token accounting and batch packing",
       [&](const Workspace& w) { return RunPack(opt, w); });
  bind("split", "Assign splits and write the record dataset",
       [&](const Workspace& w) { return RunSplit(opt, w); });
  bind("eval", "Score traces with the judge",
       [&](const Workspace& w) { return RunEval(opt, w, only_id); })
      ->add_option("--trace", only_id, "Evaluate one trace id");
  CLI::App* stats_cmd = bind("stats", "Agreement and uncertainty statistics",
                             [&](const Workspace& w) { return RunStats(opt, w, stats); });
  stats_cmd->add_option("--paired", stats.paired, "id,metric,score_a,score_b table");
  stats_cmd->add_option("--ranking", stats.ranking, "method,mean_a,mean_b table");
  stats_cmd->add_option("--ratings", stats.ratings, "item,aspect,r1..rk table");
  stats_cmd->add_option("--prf", stats.prf, "method,tp,fp,fn or method,precision,recall");
  stats_cmd->add_option("--iters", stats.iters)->check(CLI::PositiveNumber);
  CLI::App* audit_cmd = bind("audit", "Largest per-metric gaps between two judge runs",
                             [&](const Workspace& w) { return RunAudit(opt, w, audit); });
  audit_cmd->add_option("--run-a", audit.run_a, "Summary file or eval directory");
  audit_cmd->add_option("--run-b", audit.run_b, "Summary file or eval directory");
  audit_cmd->add_option("--top", audit.top)->check(CLI::PositiveNumber);
  CLI::App* pipeline = app.add_subcommand("pipeline", "Run every stage on --input");
  pipeline->add_option("--compare", compare, "Second judge run for the audit stage");
  pipeline->add_option("--iters", stats.iters)->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage = {"stepwise"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << ErrorJson("USAGE", e.what(), "").dump() << "\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    opt.views = ParseViewList(views);
    opt.render.y_up_input = !z_up;
    opt.use_cache = !no_cache;
  } catch (const Error& e) {
    err << ErrorJson(ErrorCodeName(e.code()), e.what(), command).dump() << "\n";
    return kExitUsage;
  }
  const Workspace root(opt.workdir);

  if (command != "pipeline") {
    StageRecord record = RunStage({command, stages.at(command)}, root);
    if (record.status != "ok") {
      err << ErrorJson("STAGE_FAILED", record.error, command).dump() << "\n";
      return record.error.rfind("UsageError", 0) == 0 ? kExitUsage : kExitFailure;
    }
    out << nlohmann::json{{"stage", command},
                          {"output_hash", record.output_hash},
                          {"summary", record.summary}}
               .dump(2)
        << "\n";
    return kExitOk;
  }

  if (opt.input.empty()) {
    err << ErrorJson("USAGE", "pipeline needs --input", command).dump() << "\n";
    return kExitUsage;
  }
  RunManifest manifest;
  manifest.config = opt.ToJson();
  manifest.seeds = {{"seed", opt.seed},
                    {"split", opt.seed},
                    {"bootstrap", opt.seed},
                    {"pack_shuffle", opt.shuffle_packing ? nlohmann::json(opt.seed)
                                                         : nlohmann::json(nullptr)}};
  manifest.paths = {{"input", fs::absolute(opt.input).lexically_normal().string()},
                    {"workdir", fs::absolute(opt.workdir).lexically_normal().string()},
                    {"compare", compare.string()}};
  if (!compare.empty()) audit.run_b = compare;
  const std::vector<std::string> sequence = {"curate", "schedule", "render", "annotate",
                                       "pack", "split", "eval", "stats", "audit"};
  const fs::path manifest_path = opt.workdir / "manifest.json";
  bool failed = false;
  for (const std::string& name : sequence) {
    StageRecord record;
    if (failed || (name == "audit" && compare.empty())) {
      record.name = name;
      record.status = "skipped";
    } else {
      record = RunStage({name, stages.at(name)}, root);
      if (record.status != "ok") {
        failed = true;
        err << ErrorJson("STAGE_FAILED", record.error, name).dump() << "\n";
      }
    }
    manifest.stages.push_back(std::move(record));
  }
  WriteJsonFile(manifest_path, manifest.ToJson());
  nlohmann::json stage_status = nlohmann::json::object();
  for (const auto& s : manifest.stages) stage_status[s.name] = s.status;
  out << nlohmann::json{{"manifest", manifest_path.string()}, {"stages", stage_status}}
             .dump(2)
      << "\n";
  return failed ? kExitFailure : kExitOk;
}

}  // namespace stepwise
