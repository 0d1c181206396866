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

#include "stepwise/cli/stages.h"

#include <algorithm>
#include <mutex>

#include "stepwise/annotate/annotator.h"
#include "stepwise/asset/asset.h"
#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/parallel.h"
#include "stepwise/common/text.h"
#include "stepwise/judge/evaluator.h"
#include "stepwise/judge/gateway.h"
#include "stepwise/metrics/instruction.h"
#include "stepwise/metrics/report.h"
#include "stepwise/render/contract.h"
#include "stepwise/render/png.h"
#include "stepwise/stats/agreement.h"
#include "stepwise/stats/audit.h"
#include "stepwise/stats/bootstrap.h"
#include "stepwise/stats/prf.h"
#include "stepwise/stats/tables.h"
#include "stepwise/trace/packing.h"
#include "stepwise/trace/record.h"
#include "stepwise/trace/record_store.h"
#include "stepwise/trace/split.h"
#include "stepwise/trace/tokens.h"

namespace stepwise {
namespace {

// Collects output files from parallel workers.
class FileList {
 public:
  void Add(const fs::path& p) {
    std::lock_guard<std::mutex> lock(mu_);
    files_.push_back(p);
  }
  void WriteJson(const fs::path& p, const nlohmann::json& j) {
    WriteJsonFile(p, j);
    Add(p);
  }
  void WriteText(const fs::path& p, const std::string& text) {
    WriteFileAtomic(p, text);
    Add(p);
  }
  std::vector<fs::path> Take() {
    std::sort(files_.begin(), files_.end());
    return std::move(files_);
  }

 private:
  std::mutex mu_;
  std::vector<fs::path> files_;
};

std::vector<std::string> NamesOf(const AssemblySchedule& s, const std::set<int>& ids) {
  std::vector<std::string> out;
  for (int id : s.leaf_ids) {
    if (ids.count(id)) out.push_back(s.part_names.at(id));
  }
  return out;
}

std::string ModelFor(const std::string& kind, const RunOptions& options) {
  return kind == "endpoint" ? options.endpoint.model : "";
}

std::vector<TraceRecord> LoadRecords(const Workspace& ws) {
  std::vector<TraceRecord> records;
  for (const std::string& id : ws.ScheduledIds()) {
    records.push_back(SerializeRecord(LoadTrace(ws, ws.LoadSchedule(id))));
  }
  if (records.empty()) Throw(ErrorCode::kStructure, "no annotated traces found");
  return records;
}

fs::path SummaryPath(const Workspace& ws, const fs::path& given) {
  if (given.empty()) return ws.Dir("eval") / "summary.json";
  if (fs::is_directory(given)) return given / "summary.json";
  return given;
}

}  // namespace

std::shared_ptr<ChatClient> MakeChatClient(const std::string& kind,
                                           const RunOptions& options,
                                           const fs::path& cache_dir,
                                           const std::string& suffix) {
  std::shared_ptr<ChatClient> client;
  if (kind == "mock") {
    client = std::make_shared<MockChatClient>();
  } else if (kind == "endpoint") {
    EndpointConfig cfg = options.endpoint;
    cfg.Validate();
    client = std::make_shared<HttpChatClient>(cfg);
  } else {
    Throw(ErrorCode::kUsage, "unknown client kind '" + kind + "'");
  }
  if (!options.use_cache) return client;
  return std::make_shared<CachingChatClient>(client, cache_dir, suffix);
}

StageOutput RunCurate(const RunOptions& options, const Workspace& ws) {
  if (options.input.empty()) Throw(ErrorCode::kUsage, "curate needs --input");
  const ScanResult scan = ScanAndDedup(options.input);
  FileList files;
  std::vector<std::optional<ValidationReport>> reports(scan.assets.size());
  std::vector<std::string> failures(scan.assets.size());
  ParallelFor(scan.assets.size(), options.jobs, [&](std::size_t i) {
    const AssetMeta& meta = scan.assets[i];
    const fs::path dir = ws.CurateDir(meta.model_id);
    try {
      const PartHierarchy h = ParseHierarchy(meta);
      ValidationReport report = ValidateAsset(h);
      files.WriteJson(dir / "hierarchy.json", ToJson(h));
      files.WriteJson(dir / "validation.json", report.ToJson());
      reports[i] = std::move(report);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  nlohmann::json kept = nlohmann::json::array();
  nlohmann::json rejected = nlohmann::json::array();
  for (std::size_t i = 0; i < scan.assets.size(); ++i) {
    const AssetMeta& meta = scan.assets[i];
    if (reports[i] && reports[i]->ok()) {
      kept.push_back(ToJson(meta));
    } else {
      rejected.push_back({{"model_id", meta.model_id},
                          {"reason", reports[i] ? reports[i]->ToJson()
                                                : nlohmann::json(failures[i])}});
    }
  }
  if (options.strict && !rejected.empty()) {
    Throw(ErrorCode::kStructure, std::to_string(rejected.size()) +
                                     " asset(s) failed validation under --strict");
  }
  if (kept.empty()) Throw(ErrorCode::kStructure, "no valid assets under " + options.input.string());
  files.WriteJson(ws.AssetsFile(), {{"assets", kept},
                                    {"rejected", rejected},
                                    {"scan_issues", scan.issues.ToJson()}});
  StageOutput out;
  out.summary = {{"assets", kept.size()}, {"rejected", rejected.size()}};
  out.files = files.Take();
  return out;
}

StageOutput RunSchedule(const RunOptions& options, const Workspace& ws) {
  const SchedulerConfig cfg = options.LoadScheduler();
  const std::vector<AssetMeta> assets = ws.LoadAssets();
  FileList files;
  std::vector<int> steps(assets.size());
  ParallelFor(assets.size(), options.jobs, [&](std::size_t i) {
    const PartHierarchy h = ParseHierarchy(assets[i]);
    const AssemblySchedule schedule = BuildSchedule(h, cfg);
    const ValidationReport report = ValidateSchedule(schedule, cfg);
    if (!report.ok()) {
      Throw(ErrorCode::kInvariant, assets[i].model_id + ": invalid schedule: " +
                                       report.ToJson().dump());
    }
    if (options.strict && report.CountSeverity(Severity::kWarning) > 0) {
      Throw(ErrorCode::kInvariant, assets[i].model_id + ": schedule warnings under --strict: " +
                                       report.ToJson().dump());
    }
    files.WriteJson(ws.ScheduleFile(assets[i].model_id), ToJson(schedule));
    steps[i] = schedule.N();
  });
  StageOutput out;
  nlohmann::json per_asset = nlohmann::json::object();
  for (std::size_t i = 0; i < assets.size(); ++i) per_asset[assets[i].model_id] = steps[i];
  out.summary = {{"steps", per_asset}};
  out.files = files.Take();
  return out;
}

StageOutput RunRender(const RunOptions& options, const Workspace& ws) {
  options.render.Validate();
  const std::vector<std::string> ids = ws.ScheduledIds();
  if (ids.empty()) Throw(ErrorCode::kStructure, "no schedules to render");
  FileList files;
  ParallelFor(ids.size(), options.jobs, [&](std::size_t i) {
    const std::string& id = ids[i];
    const AssemblySchedule schedule = ws.LoadSchedule(id);
    const PartHierarchy h = ParseHierarchy(schedule.asset);
    const fs::path dir = ws.TraceDir(id);

    RenderRequest request;
    request.settings = options.render;
    request.views = options.views;
    auto meshes_for = [&](int n) {
      const std::set<int> parts = CumulativeParts(schedule, n);
      std::vector<fs::path> meshes;
      for (const PartNode& leaf : h.leaves) {
        if (!parts.count(leaf.node_id)) continue;
        meshes.insert(meshes.end(), leaf.mesh_refs.begin(), leaf.mesh_refs.end());
      }
      return meshes;
    };
    for (int n = 1; n <= schedule.N(); ++n) {
      RenderJob job{n, "step", meshes_for(n), {}};
      for (ViewId v : options.views) job.outputs[v] = ws.ImagePath(id, v, n);
      request.states.push_back(std::move(job));
    }
    RenderJob final_job{schedule.N(), "final", meshes_for(schedule.N()), {}};
    for (ViewId v : options.views) final_job.outputs[v] = ws.ImagePath(id, v, std::nullopt);
    request.states.push_back(std::move(final_job));

    const fs::path request_path = dir / "render_request.json";
    request.response_path = dir / "render_response.json";
    std::vector<RenderResult> results;
    if (options.renderer == "builtin") {
      WriteRenderRequest(request_path, request);
      results = ExecuteBuiltin(request);
      WriteJsonFile(request.response_path, ToJson(results));
    } else if (options.renderer == "blender") {
      BlenderOptions blender{options.blender, options.adapter, dir / "blender.log"};
      results = ExecuteBlender(request, request_path, blender);
    } else {
      Throw(ErrorCode::kUsage, "unknown renderer '" + options.renderer + "'");
    }
    for (const RenderResult& r : results) {
      if (r.status != "ok") {
        Throw(ErrorCode::kIo, id + ": render of " + r.label + " " + std::to_string(r.step) +
                                  " (" + std::string(ViewName(r.view)) + ") failed: " + r.log);
      }
      if (!fs::exists(r.path)) {
        Throw(ErrorCode::kIo, id + ": renderer reported " + r.path.string() +
                                  " but the file is missing");
      }
      files.Add(r.path);
    }

    for (int n = 1; n <= schedule.N(); ++n) {
      for (ViewId v : options.views) {
        const fs::path mask = ws.MaskPath(id, v, n);
        WriteMaskPng(mask, ForegroundMask(ReadPng(ws.ImagePath(id, v, n))));
        files.Add(mask);
      }
      files.WriteJson(dir / ("step_" + std::to_string(n) + ".json"),
                      StepJson(n, MetadataForStep(schedule, n), std::nullopt));
    }
    files.WriteJson(dir / "final_complete.json", FinalJson(schedule, std::nullopt));
  });
  StageOutput out;
  out.summary = {{"traces", ids.size()}, {"renderer", options.renderer}};
  out.files = files.Take();
  return out;
}

StageOutput RunAnnotate(const RunOptions& options, const Workspace& ws) {
  const std::vector<std::string> ids = ws.ScheduledIds();
  if (ids.empty()) Throw(ErrorCode::kStructure, "no traces to annotate");
  auto client = MakeChatClient(options.annotator, options, ws.AnnotateCache(),
                               kAnnotateCacheSuffix);
  const std::string model = ModelFor(options.annotator, options);
  FileList files;
  std::vector<int> warnings(ids.size(), 0);
  ParallelFor(ids.size(), options.jobs, [&](std::size_t i) {
    const std::string& id = ids[i];
    const AssemblySchedule schedule = ws.LoadSchedule(id);
    const fs::path dir = ws.TraceDir(id);
    const int total = schedule.N();

    std::vector<StepSummary> summaries;
    for (int n = 1; n <= total; ++n) {
      summaries.push_back({n, NamesOf(schedule, DeltaParts(schedule, n))});
    }
    const auto all_names = NamesOf(schedule, CumulativeParts(schedule, total));
    const fs::path final_png = ws.ImagePath(id, ViewId::kFront, std::nullopt);
    const std::optional<Bytes> final_bytes =
        fs::exists(final_png) ? std::optional<Bytes>(ReadBinaryFile(final_png)) : std::nullopt;
    const GoalPrompt goal =
        GenerateGoalPrompt(final_bytes, all_names, summaries, *client, model);

    std::vector<StepRationale> rationales;
    nlohmann::json validation = nlohmann::json::array();
    std::optional<Bytes> previous;
    for (int n = 1; n <= total; ++n) {
      RationaleInput input;
      input.step = n;
      input.total_steps = total;
      input.object_type = ToLower(schedule.asset.model_cat);
      input.prompt_text = goal.text;
      input.existing_names = NamesOf(schedule, CumulativeParts(schedule, n - 1));
      input.delta_names = summaries[n - 1].part_names;
      input.previous_png = previous;
      input.current_png = ReadBinaryFile(ws.ImagePath(id, ViewId::kFront, n));
      StepRationale r = GenerateStepRationale(input, *client, model);
      const ValidationReport report = ValidateRationale(r, input.delta_names, n, total);
      if (!report.ok() && options.strict) {
        Throw(ErrorCode::kEmptyAnnotation,
              id + " step " + std::to_string(n) + ": " + report.ToJson().dump());
      }
      warnings[i] += static_cast<int>(report.issues().size());
      validation.push_back({{"step", n}, {"report", report.ToJson()}});
      files.WriteJson(dir / ("step_" + std::to_string(n) + ".json"),
                      StepJson(n, MetadataForStep(schedule, n), r));
      rationales.push_back(std::move(r));
      previous = std::move(input.current_png);
    }
    nlohmann::json rationale_json = nlohmann::json::array();
    for (const auto& r : rationales) rationale_json.push_back(ToJson(r));
    files.WriteJson(dir / "goal.json", ToJson(goal));
    files.WriteJson(dir / "rationales.json", rationale_json);
    files.WriteJson(dir / "annotation_report.json", validation);
    files.WriteJson(dir / "final_complete.json", FinalJson(schedule, goal));
  });
  StageOutput out;
  int issue_count = 0;
  for (int w : warnings) issue_count += w;
  out.summary = {{"traces", ids.size()}, {"annotator", client->id()}, {"issues", issue_count}};
  out.files = files.Take();
  return out;
}

StageOutput RunPack(const RunOptions& options, const Workspace& ws) {
  PackingConfig cfg = options.packing;
  if (options.shuffle_packing) cfg.shuffle_seed = options.seed;
  cfg.Validate();
  std::vector<TokenizedSequence> sequences;
  nlohmann::json seq_json = nlohmann::json::array();
  for (const TraceRecord& record : LoadRecords(ws)) {
    TokenizedSequence seq =
        TokenizeRecord(record, options.render.width, options.render.height);
    const std::int64_t original = seq.token_count;
    if (seq.token_count > cfg.cap) seq = Truncate(seq, cfg.cap);
    seq_json.push_back({{"id", seq.id},
                        {"tokens", seq.token_count},
                        {"truncated_from", original > seq.token_count
                                               ? nlohmann::json(original)
                                               : nlohmann::json(nullptr)}});
    sequences.push_back(std::move(seq));
  }
  const PackingPlan plan = PackBatches(sequences, cfg);
  FileList files;
  files.WriteJson(ws.Dir("pack") / "sequences.json", seq_json);
  files.WriteJson(ws.Dir("pack") / "plan.json", plan.ToJson());
  StageOutput out;
  out.summary = {{"sequences", sequences.size()}, {"batches", plan.batches.size()}};
  out.files = files.Take();
  return out;
}

StageOutput RunSplit(const RunOptions& options, const Workspace& ws) {
  const std::vector<TraceRecord> records = LoadRecords(ws);
  DatasetSplit split;
  if (options.split_manifest.empty()) {
    split = SplitDataset(records, options.seed);
  } else {
    split = SplitDataset(records, LoadSplitManifest(options.split_manifest));
    if (!split.unassigned.empty() && options.strict) {
      Throw(ErrorCode::kStructure, std::to_string(split.unassigned.size()) +
                                       " record(s) missing from the split manifest");
    }
  }
  const fs::path root = ws.Dir("dataset");
  StageOutput out;
  out.files = WriteDataset(root, split);
  std::sort(out.files.begin(), out.files.end());
  out.summary = {{"train", split.train.size()},
                 {"val", split.val.size()},
                 {"test", split.test.size()},
                 {"unassigned", split.unassigned}};
  return out;
}

StageOutput RunEval(const RunOptions& options, const Workspace& ws,
                    const std::string& only_id) {
  std::vector<std::string> ids = ws.ScheduledIds();
  if (!only_id.empty()) {
    if (std::find(ids.begin(), ids.end(), only_id) == ids.end()) {
      Throw(ErrorCode::kNotFound, "no scheduled trace '" + only_id + "'");
    }
    ids = {only_id};
  }
  if (ids.empty()) Throw(ErrorCode::kStructure, "no traces to evaluate");
  std::optional<InstructionSpec> spec_override;
  if (!options.spec_file.empty()) spec_override = LoadInstructionSpec(options.spec_file);

  auto client =
      MakeChatClient(options.judge, options, ws.JudgeCache(), kJudgeCacheSuffix);
  JudgeGateway gateway(client, ModelFor(options.judge, options));
  EvalOptions eval_options;
  eval_options.self_consistency = options.self_consistency;
  eval_options.votes = options.votes;
  eval_options.ts.largest_component = options.largest_component;

  FileList files;
  std::vector<MetricReport> reports(ids.size());
  ParallelFor(ids.size(), options.jobs, [&](std::size_t i) {
    const std::string& id = ids[i];
    const AssemblySchedule schedule = ws.LoadSchedule(id);
    const fs::path dir = ws.TraceDir(id);
    EvalInputs inputs;
    inputs.trace_id = id;
    inputs.goal = GoalPromptFromJson(ReadJsonFile(dir / "goal.json")).text;
    inputs.spec_override = spec_override;
    for (const auto& r : ReadJsonFile(dir / "rationales.json")) {
      inputs.rationales.push_back(StepRationaleFromJson(r).text);
    }
    for (ViewId v : options.views) {
      inputs.final_images[v] = ReadBinaryFile(ws.ImagePath(id, v, std::nullopt));
      for (int n = 1; n <= schedule.N(); ++n) {
        inputs.step_images[v].push_back(ReadBinaryFile(ws.ImagePath(id, v, n)));
        const fs::path mask = ws.MaskPath(id, v, n);
        inputs.masks[v].push_back(ReadMaskPng(mask));
        inputs.mask_paths[v].push_back(fs::relative(mask, ws.root()).generic_string());
      }
    }
    reports[i] = Evaluate(inputs, gateway, eval_options);
    files.WriteJson(ws.Dir("eval") / (id + ".json"), reports[i].ToJson());
  });

  JudgeRun run;
  nlohmann::json not_applicable = nlohmann::json::object();
  for (const MetricReport& r : reports) {
    run[r.trace_id] = r.aggregate;
    for (const auto& [metric, reason] : r.not_applicable) {
      not_applicable[r.trace_id][std::string(MetricName(metric))] = reason;
    }
  }
  nlohmann::json summary = ToJson(run);
  summary["not_applicable"] = not_applicable;
  summary["judge"] = client->id();
  files.WriteJson(ws.Dir("eval") / "summary.json", summary);
  StageOutput out;
  out.summary = summary;
  out.files = files.Take();
  return out;
}

StageOutput RunStats(const RunOptions& options, const Workspace& ws,
                     const StatsInputs& inputs) {
  FileList files;
  StageOutput out;
  const fs::path dir = ws.Dir("stats");
  const bool tables = !inputs.paired.empty() || !inputs.ratings.empty() ||
                      !inputs.prf.empty() || !inputs.ranking.empty();
  if (!inputs.paired.empty()) {
    std::vector<ConsistencyRow> rows;
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& [metric, scores] :
         PairedScoresByMetric(ReadTableFile(inputs.paired))) {
      rows.push_back(ComputeConsistency(metric, scores, inputs.iters, options.seed,
                                        options.jobs));
      rows_json.push_back(ToJson(rows.back()));
    }
    std::optional<RankingStability> ranking;
    if (!inputs.ranking.empty()) {
      const Table t = ReadTableFile(inputs.ranking);
      std::map<std::string, double> a, b;
      const std::size_t m = t.Column("method"), ca = t.Column("mean_a"),
                        cb = t.Column("mean_b");
      for (const auto& row : t.rows) {
        a[row[m]] = std::stod(row[ca]);
        b[row[m]] = std::stod(row[cb]);
      }
      ranking = CompareRankings(a, b);
      out.summary["ranking"] = {{"tau", ToJson(ranking->tau)},
                                {"top1_match", ranking->top1_match}};
    }
    files.WriteText(dir / "consistency.tsv", FormatConsistencyTable(rows, ranking));
    files.WriteJson(dir / "consistency.json", rows_json);
    out.summary["consistency"] = rows_json;
  }
  if (!inputs.ratings.empty()) {
    std::vector<HumanEvalAspect> aspects;
    nlohmann::json aspects_json = nlohmann::json::array();
    for (const auto& [aspect, matrix] : RatingsByAspect(ReadTableFile(inputs.ratings))) {
      aspects.push_back(SummarizeAspect(aspect, matrix, inputs.iters, options.seed,
                                        options.jobs));
      aspects_json.push_back(ToJson(aspects.back()));
    }
    files.WriteText(dir / "human_eval.tsv", FormatHumanEvalTable(aspects));
    files.WriteJson(dir / "human_eval.json", aspects_json);
    out.summary["human_eval"] = aspects_json;
  }
  if (!inputs.prf.empty()) {
    const Table t = ReadTableFile(inputs.prf);
    const std::size_t m = t.Column("method");
    nlohmann::json prf_json = nlohmann::json::array();
    std::string tsv = "Method\tPrecision\tRecall\tF1-Score\n";
    auto pct = [](const StatValue& v) {
      if (!v.defined()) return std::string("undef");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", *v);
      return std::string(buf);
    };
    for (const auto& row : t.rows) {
      Prf prf;
      const auto has = [&](const char* c) {
        return std::find(t.header.begin(), t.header.end(), c) != t.header.end();
      };
      if (has("tp")) {
        prf = PrecisionRecallF1(std::stol(row[t.Column("tp")]), std::stol(row[t.Column("fp")]),
                                std::stol(row[t.Column("fn")]));
        // Reported in percent like the precision/recall columns.
        for (StatValue* v : {&prf.precision, &prf.recall, &prf.f1}) {
          if (v->defined()) v->value = 100 * *v->value;
        }
      } else {
        const double p = std::stod(row[t.Column("precision")]);
        const double r = std::stod(row[t.Column("recall")]);
        prf = {StatValue::Of(p), StatValue::Of(r), F1FromPr(p, r)};
      }
      tsv += row[m] + "\t" + pct(prf.precision) + "\t" + pct(prf.recall) + "\t" +
             pct(prf.f1) + "\n";
      prf_json.push_back({{"method", row[m]},
                          {"precision", ToJson(prf.precision)},
                          {"recall", ToJson(prf.recall)},
                          {"f1", ToJson(prf.f1)}});
    }
    files.WriteText(dir / "prf.tsv", tsv);
    files.WriteJson(dir / "prf.json", prf_json);
    out.summary["prf"] = prf_json;
  }
  if (!tables) {
    const JudgeRun run = JudgeRunFromJson(ReadJsonFile(SummaryPath(ws, {})));
    nlohmann::json metrics = nlohmann::json::object();
    std::string tsv = "Metric\tPrompts\tMean\tCI low\tCI high\n";
    for (Metric metric : kAllMetrics) {
      std::vector<double> values;
      for (const auto& [id, scores] : run) {
        const auto it = scores.find(metric);
        if (it != scores.end()) values.push_back(it->second);
      }
      const auto ci = BootstrapMeanCi(values, inputs.iters, options.seed, options.jobs);
      const std::string name(MetricName(metric));
      if (!ci) {
        metrics[name] = {{"prompts", 0}, {"mean", {{"undefined", "NO_SCORES"}}}};
        tsv += name + "\t0\tundef\tundef\tundef\n";
        continue;
      }
      metrics[name] = {{"prompts", values.size()},
                       {"mean", ci->estimate},
                       {"ci", {{"lo", ci->lo}, {"hi", ci->hi}}}};
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%s\t%zu\t%.4f\t%.4f\t%.4f\n", name.c_str(),
                    values.size(), ci->estimate, ci->lo, ci->hi);
      tsv += buf;
    }
    files.WriteJson(dir / "metrics.json", metrics);
    files.WriteText(dir / "metrics.tsv", tsv);
    out.summary["metrics"] = metrics;
  }
  out.files = files.Take();
  return out;
}

StageOutput RunAudit(const RunOptions& /*options*/, const Workspace& ws,
                     const AuditInputs& inputs) {
  if (inputs.run_b.empty()) Throw(ErrorCode::kUsage, "audit needs --run-b");
  const JudgeRun a = JudgeRunFromJson(ReadJsonFile(SummaryPath(ws, inputs.run_a)));
  const JudgeRun b = JudgeRunFromJson(ReadJsonFile(SummaryPath(ws, inputs.run_b)));
  const auto gaps = TopScoreGaps(a, b, inputs.top);
  FileList files;
  const nlohmann::json j = ToJson(gaps);
  files.WriteJson(ws.Dir("audit") / "top_gaps.json", j);
  StageOutput out;
  out.summary = j;
  out.files = files.Take();
  return out;
}

}  // namespace stepwise
