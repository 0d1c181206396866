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

#include "stepwise/judge/evaluator.h"

#include <functional>

#include "stepwise/annotate/templates.h"
#include "stepwise/common/error.h"
#include "stepwise/common/parallel.h"

namespace stepwise {
namespace {

JudgeQuery BaseQuery(std::string_view template_id, const Bytes& image) {
  JudgeQuery q;
  q.template_id = std::string(template_id);
  q.images = {image};
  return q;
}

}  // namespace

JudgeQuery ShapeQuery(const std::string& goal, const InstructionSpec& spec,
                      const Bytes& image) {
  JudgeQuery q = BaseQuery(kJudgeSfTemplate, image);
  q.question_id = "SF";
  q.slots = {{"SHAPE_DESCRIPTION", goal}};
  q.suffix = "\n\nQuestion: " + spec.shape_question;
  return q;
}

JudgeQuery AttributeQuery(const AttributeItem& item, const Bytes& image) {
  JudgeQuery q = BaseQuery(kJudgeAfTemplate, image);
  q.question_id = "AF/" + item.target + "/" + item.attribute;
  q.slots = {{"PART_NAME", item.target}, {"ATTRIBUTE", item.attribute}};
  return q;
}

JudgeQuery ConnectivityQuery(const ConnectivityPair& pair, const Bytes& image) {
  JudgeQuery q = BaseQuery(kJudgeCpTemplate, image);
  q.question_id = "CP/" + pair.a + "/" + pair.b;
  q.slots = {{"PART_NAME", pair.a}, {"ATTRIBUTE", "attached to " + pair.b}};
  q.suffix = "\n\nAnswer (Attached/Detached):";
  q.options = {kAttached, kDetached};
  return q;
}

JudgeQuery RelationQuery(const RelationTriplet& relation, const Bytes& image) {
  JudgeQuery q = BaseQuery(kJudgeVtTemplate, image);
  q.question_id =
      "VT/" + relation.subject + "/" + relation.predicate + "/" + relation.object;
  q.slots = {{"PART_A", relation.subject},
             {"PART_B", relation.object},
             {"RELATION", relation.predicate}};
  return q;
}

JudgeQuery RationaleQuery(const std::string& rationale, const Bytes& previous,
                          const Bytes& current) {
  JudgeQuery q;
  q.template_id = std::string(kJudgeRaTemplate);
  q.question_id = "RA";
  q.slots = {{"RATIONALE", rationale}};
  q.images = {previous, current};
  return q;
}

MetricReport Evaluate(const EvalInputs& inputs, JudgeGateway& gateway,
                      const EvalOptions& options) {
  MetricReport report;
  report.trace_id = inputs.trace_id;
  report.goal = inputs.goal;
  if (inputs.spec_override) {
    report.spec = *inputs.spec_override;
    report.notes.push_back("instruction spec supplied by file");
  } else {
    report.spec = ParseInstruction(inputs.goal);
  }
  const InstructionSpec& spec = report.spec;
  if (inputs.final_images.empty()) {
    Throw(ErrorCode::kStructure, "evaluation needs at least one view image");
  }

  auto decide = [&](const JudgeQuery& q) {
    if (options.self_consistency) {
      return gateway.SelfConsistency(q, options.votes)
          .ToDecision(q.question_id, q.options);
    }
    return gateway.ForcedChoice(q);
  };

  for (const auto& [view, image] : inputs.final_images) {
    ViewReport vr;
    vr.view = view;
    const std::string prefix = std::string(ViewName(view)) + "/";

    // Counts first: AF depends on them.
    std::vector<int> counts(spec.categories.size(), 0);
    ParallelFor(spec.categories.size(), options.jobs, [&](std::size_t i) {
      counts[i] = gateway.CountComponents(spec.categories[i].name, image,
                                          prefix + "CN/" + spec.categories[i].name);
    });
    for (std::size_t i = 0; i < counts.size(); ++i) {
      vr.counts[spec.categories[i].name] = counts[i];
    }

    std::vector<JudgeQuery> queries;
    queries.push_back(ShapeQuery(inputs.goal, spec, image));
    for (const auto& a : spec.attributes) queries.push_back(AttributeQuery(a, image));
    for (const auto& e : spec.connectivity) {
      queries.push_back(ConnectivityQuery(e, image));
    }
    for (const auto& r : spec.relations) queries.push_back(RelationQuery(r, image));
    const auto steps_it = inputs.step_images.find(view);
    const std::size_t n_steps =
        steps_it == inputs.step_images.end() ? 0 : steps_it->second.size();
    const std::size_t ra_begin = queries.size();
    if (n_steps >= 2) {
      if (inputs.rationales.size() != n_steps) {
        Throw(ErrorCode::kStructure,
              std::to_string(n_steps) + " step images but " +
                  std::to_string(inputs.rationales.size()) + " rationales");
      }
      for (std::size_t n = 1; n < n_steps; ++n) {
        JudgeQuery q = RationaleQuery(inputs.rationales[n],
                                      steps_it->second[n - 1], steps_it->second[n]);
        q.question_id = "RA/" + std::to_string(n + 1);
        queries.push_back(std::move(q));
      }
    }
    for (JudgeQuery& q : queries) q.question_id = prefix + q.question_id;

    std::vector<JudgeDecision> decisions(queries.size());
    ParallelFor(queries.size(), options.jobs,
                [&](std::size_t i) { decisions[i] = decide(queries[i]); });

    std::size_t k = 0;
    const JudgeDecision& sf = decisions[k++];
    auto take = [&](std::size_t count) {
      std::vector<JudgeDecision> out(decisions.begin() + k,
                                     decisions.begin() + k + count);
      k += count;
      return out;
    };
    const auto af = take(spec.attributes.size());
    const auto cp = take(spec.connectivity.size());
    const auto vt = take(spec.relations.size());
    const auto ra = take(queries.size() - ra_begin);

    auto put = [&](Metric m, std::optional<double> value, const char* reason) {
      if (value) {
        vr.scores[m] = *value;
      } else {
        vr.not_applicable[m] = reason;
      }
    };
    put(Metric::kCN, ScoreCn(spec, vr.counts), "no component categories");
    put(Metric::kSF, ScoreSf(sf), "");
    put(Metric::kAF, ScoreAf(spec, af, vr.counts), "no attributes");
    put(Metric::kCP, ScoreCp(spec, cp), "no connectivity pairs");
    put(Metric::kVT, ScoreVt(spec, vt), "no relations");
    put(Metric::kRA, ScoreRa(ra), "fewer than 2 steps");

    const auto masks_it = inputs.masks.find(view);
    if (masks_it != inputs.masks.end()) {
      put(Metric::kTS, ScoreTs(masks_it->second, options.ts, &vr.ts),
          "fewer than 2 steps");
      if (!vr.ts.empty_previous.empty()) {
        report.notes.push_back(prefix + "TS: empty previous mask at " +
                               std::to_string(vr.ts.empty_previous.size()) +
                               " step(s), scored 0");
      }
      const auto paths = inputs.mask_paths.find(view);
      if (paths != inputs.mask_paths.end()) vr.masks = paths->second;
    } else {
      vr.not_applicable[Metric::kTS] = "no masks";
    }
    vr.decisions = decisions;
    report.views.push_back(std::move(vr));
  }
  report.Aggregate();
  return report;
}

}  // namespace stepwise
