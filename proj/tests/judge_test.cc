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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "stepwise/annotate/templates.h"
#include "stepwise/common/error.h"
#include "stepwise/judge/evaluator.h"
#include "stepwise/judge/gateway.h"
#include "stepwise/metrics/confidence.h"

namespace stepwise {
namespace {

const std::vector<std::string> kYesNo = {"Yes", "No"};

TokenLogprob Token(const std::string& text, double lp,
                   std::vector<std::pair<std::string, double>> top = {}) {
  return {text, lp, std::move(top)};
}

JudgeQuery SampleQuery() {
  JudgeQuery q;
  q.question_id = "AF/seat/square";
  q.template_id = std::string(kJudgeAfTemplate);
  q.slots = {{"PART_NAME", "seat"}, {"ATTRIBUTE", "square"}};
  q.images = {{1, 2, 3}};
  return q;
}

std::string ExpectCode(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return "";
}

TEST(ParseTest, AnswerLabel) {
  EXPECT_EQ(ParseAnswerLabel("Final Verdict:\n   - Answer: Yes\n", kYesNo), "Yes");
  EXPECT_EQ(ParseAnswerLabel("answer: no.", kYesNo), "No");
  EXPECT_EQ(ParseAnswerLabel("Answer: Yes\nRevised answer: No", kYesNo), "No");
  // A later "answer" without a usable label falls back to an earlier one.
  EXPECT_EQ(ParseAnswerLabel("Answer: Yes\nThat is my answer.", kYesNo), "Yes");
  EXPECT_EQ(ParseAnswerLabel("  yes ", kYesNo), "Yes");
  EXPECT_EQ(ParseAnswerLabel("**Answer:** Attached",
                             {"Attached", "Detached"}),
            "Attached");
  EXPECT_FALSE(ParseAnswerLabel("Answer: Maybe", kYesNo).has_value());
  EXPECT_FALSE(ParseAnswerLabel("Yes and no", kYesNo).has_value());
  EXPECT_FALSE(ParseAnswerLabel("", kYesNo).has_value());
}

TEST(ParseTest, Count) {
  EXPECT_EQ(ParseCount("4"), 4);
  EXPECT_EQ(ParseCount(" 0\n"), 0);
  EXPECT_EQ(ParseCount("{\"count\": 3}"), 3);
  EXPECT_EQ(ParseCount("```json\n{\"count\": 12}\n```"), 12);
  EXPECT_FALSE(ParseCount("{\"count\": -1}").has_value());
  EXPECT_FALSE(ParseCount("{\"count\": 2.5}").has_value());
  EXPECT_FALSE(ParseCount("four").has_value());
  EXPECT_FALSE(ParseCount("There are 4 legs.").has_value());
  EXPECT_FALSE(ParseCount("").has_value());
}

TEST(LogscoreTest, SingleToken) {
  std::vector<std::string> notes;
  const std::vector<TokenLogprob> lp = {
      Token("Answer", -0.01), Token(":", 0.0),
      Token(" No", -0.3, {{" No", -0.3}, {" Yes", -1.5}})};
  const auto scores = ExtractOptionLogscores(lp, kYesNo, "No", &notes);
  ASSERT_TRUE(scores.has_value());
  EXPECT_EQ(scores->first, -1.5);
  EXPECT_EQ(scores->second, -0.3);
  EXPECT_TRUE(notes.empty());
}

TEST(LogscoreTest, LastOccurrenceWins) {
  const std::vector<TokenLogprob> lp = {
      Token("Yes", -2.0, {{"Yes", -2.0}, {"No", -0.2}}), Token(" because", 0),
      Token(" Yes", -0.1, {{" Yes", -0.1}, {" No", -2.4}})};
  const auto scores = ExtractOptionLogscores(lp, kYesNo, "Yes", nullptr);
  ASSERT_TRUE(scores.has_value());
  EXPECT_EQ(*scores, std::make_pair(-0.1, -2.4));
}

TEST(LogscoreTest, MultiTokenLabelIsSummed) {
  const std::vector<std::string> options = {"Attached", "Detached"};
  std::vector<std::string> notes;
  const std::vector<TokenLogprob> lp = {
      Token(" Att", -0.2, {{" Att", -0.2}, {" Det", -1.9}}), Token("ached", -0.05)};
  const auto scores = ExtractOptionLogscores(lp, options, "Attached", &notes);
  ASSERT_TRUE(scores.has_value());
  EXPECT_NEAR(scores->first, -0.25, 1e-15);
  EXPECT_EQ(scores->second, -1.9);
  EXPECT_EQ(notes, (std::vector<std::string>{
                       "answer label spans 2 tokens; logprobs summed",
                       "alternative label scored by first token"}));
}

TEST(LogscoreTest, MissingAlternative) {
  const std::vector<TokenLogprob> lp = {Token("Yes", -0.1, {{"Yes", -0.1}, {"Maybe", -3}})};
  EXPECT_FALSE(ExtractOptionLogscores(lp, kYesNo, "Yes", nullptr).has_value());
  EXPECT_FALSE(ExtractOptionLogscores({}, kYesNo, "Yes", nullptr).has_value());
  EXPECT_FALSE(ExtractOptionLogscores(lp, kYesNo, "No", nullptr).has_value());
}

TEST(QueryTest, ValidateAndRequest) {
  JudgeQuery q = SampleQuery();
  EXPECT_NO_THROW(q.Validate());
  const ChatRequest request = q.ToRequest("judge-model", false);
  EXPECT_EQ(request.model, "judge-model");
  EXPECT_EQ(request.template_id, "judge_af");
  ASSERT_EQ(request.messages.size(), 2u);
  EXPECT_EQ(request.messages[0].role, "system");
  EXPECT_EQ(request.messages[0].text, TemplateText(kJudgeSystemTemplate));
  EXPECT_EQ(request.messages[1].text,
            FillTemplate(TemplateText(kJudgeAfTemplate), q.slots));
  EXPECT_EQ(request.messages[1].images, q.images);
  EXPECT_EQ(request.decode.temperature, 0.0);
  EXPECT_EQ(request.decode.top_logprobs, kJudgeTopLogprobs);
  const ChatRequest again = q.ToRequest("judge-model", true);
  EXPECT_TRUE(again.UserText().find("Format reminder") != std::string::npos);
  EXPECT_TRUE(again.UserText().find("\"Answer: No\"") != std::string::npos);
  EXPECT_NE(again.CacheKey(), request.CacheKey());

  q.images.clear();
  ExpectCode([&] { q.Validate(); }, ErrorCode::kConfig);
  q.images = {{1}, {2}, {3}};
  ExpectCode([&] { q.Validate(); }, ErrorCode::kConfig);
  q.images = {{1}};
  q.options = {"Yes"};
  ExpectCode([&] { q.Validate(); }, ErrorCode::kConfig);
}

TEST(QueryTest, Builders) {
  InstructionSpec spec;
  spec.shape_question = "Is it a chair?";
  const Bytes img = {7};
  const JudgeQuery sf = ShapeQuery("Build a chair.", spec, img);
  EXPECT_EQ(sf.question_id, "SF");
  EXPECT_EQ(sf.template_id, "judge_sf");
  EXPECT_EQ(sf.slots.at("SHAPE_DESCRIPTION"), "Build a chair.");
  EXPECT_EQ(sf.suffix, "\n\nQuestion: Is it a chair?");
  const JudgeQuery af = AttributeQuery({"seat", "square"}, img);
  EXPECT_EQ(af.question_id, "AF/seat/square");
  const JudgeQuery cp = ConnectivityQuery({"seat", "legs"}, img);
  EXPECT_EQ(cp.question_id, "CP/seat/legs");
  EXPECT_EQ(cp.options, (std::vector<std::string>{"Attached", "Detached"}));
  EXPECT_EQ(cp.slots.at("ATTRIBUTE"), "attached to legs");
  const JudgeQuery vt = RelationQuery({"back", "above", "seat"}, img);
  EXPECT_EQ(vt.question_id, "VT/back/above/seat");
  EXPECT_EQ(vt.slots.at("RELATION"), "above");
  const JudgeQuery ra = RationaleQuery("Next, add the seat.", {1}, {2});
  EXPECT_EQ(ra.images, (std::vector<Bytes>{{1}, {2}}));
  EXPECT_EQ(ra.template_id, "judge_ra");
  for (const JudgeQuery* q : {&sf, &af, &cp, &vt, &ra}) {
    EXPECT_NO_THROW(q->Validate());
    EXPECT_EQ(q->ToRequest("", false).UserText().find('{'), std::string::npos)
        << q->template_id;
  }
}

TEST(ForcedChoiceTest, LogscoreConfidence) {
  auto client = std::make_shared<MockChatClient>([](const ChatRequest&, int) {
    ChatResponse r;
    r.text = "Answer: No";
    r.logprobs = {Token("No", std::log(0.7), {{"No", std::log(0.7)}, {"Yes", std::log(0.3)}})};
    return r;
  });
  JudgeGateway gateway(client, "m");
  const JudgeQuery q = SampleQuery();
  const JudgeDecision d = gateway.ForcedChoice(q);
  EXPECT_EQ(d.answer, "No");
  EXPECT_EQ(d.method, "logscore");
  EXPECT_NEAR(d.confidence, 0.7, 1e-12);
  EXPECT_NEAR(d.ConfidenceOf("Yes"), 0.3, 1e-12);
  EXPECT_EQ(d.confidence, 1.0 - Confidence(std::log(0.3), std::log(0.7)));
  EXPECT_EQ(d.question_id, q.question_id);
  EXPECT_EQ(d.transcript_ref, q.ToRequest("m", false).CacheKey());
  EXPECT_TRUE(d.notes.empty());
  EXPECT_EQ(client->calls(), 1);
}

TEST(ForcedChoiceTest, HardLabelWithoutLogprobs) {
  auto client = std::make_shared<MockChatClient>(ScriptedResponder({"Answer: Yes"}));
  JudgeGateway gateway(client);
  const JudgeDecision d = gateway.ForcedChoice(SampleQuery());
  EXPECT_EQ(d.answer, "Yes");
  EXPECT_EQ(d.method, "hard_label");
  EXPECT_EQ(d.confidence, 1.0);
  EXPECT_FALSE(d.logscores.has_value());
}

TEST(ForcedChoiceTest, OneReAskThenFailure) {
  std::vector<std::string> user_texts;
  auto client = std::make_shared<MockChatClient>(
      [&](const ChatRequest& request, int index) {
        user_texts.push_back(request.UserText());
        ChatResponse r;
        r.text = index == 0 ? "It looks square to me." : "Answer: Yes";
        return r;
      });
  JudgeGateway gateway(client);
  const JudgeDecision d = gateway.ForcedChoice(SampleQuery());
  EXPECT_EQ(d.answer, "Yes");
  EXPECT_EQ(d.notes, (std::vector<std::string>{"answered after format reminder"}));
  ASSERT_EQ(user_texts.size(), 2u);
  EXPECT_EQ(user_texts[0].find("Format reminder"), std::string::npos);
  EXPECT_NE(user_texts[1].find("Format reminder"), std::string::npos);

  auto never = std::make_shared<MockChatClient>(ScriptedResponder({"unsure", "still unsure"}));
  JudgeGateway failing(never);
  const std::string what =
      ExpectCode([&] { failing.ForcedChoice(SampleQuery()); }, ErrorCode::kJudgeFormat);
  EXPECT_NE(what.find("AF/seat/square"), std::string::npos);
  EXPECT_EQ(never->calls(), 2);
}

TEST(CountTest, ReAskAndErrors) {
  auto client = std::make_shared<MockChatClient>(
      ScriptedResponder({"I see several legs.", "```json\n{\"count\": 4}\n```"}));
  JudgeGateway gateway(client);
  EXPECT_EQ(gateway.CountComponents("legs", {1}), 4);
  EXPECT_EQ(client->calls(), 2);

  std::vector<ChatRequest> seen;
  auto recording = std::make_shared<MockChatClient>(
      [&](const ChatRequest& request, int) {
        seen.push_back(request);
        ChatResponse r;
        r.text = "many";
        return r;
      });
  JudgeGateway failing(recording);
  ExpectCode([&] { failing.CountComponents("legs", {1}); }, ErrorCode::kJudgeFormat);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0].template_id, "judge_count");
  EXPECT_EQ(seen[0].decode.top_logprobs, 0);
  EXPECT_NE(seen[0].UserText().find("\"legs\""), std::string::npos);
  EXPECT_NE(seen[1].UserText().find("{\"count\": <integer>}."), std::string::npos);
  ExpectCode([&] { gateway.CountComponents("  ", {1}); }, ErrorCode::kConfig);
}

TEST(SelfConsistencyTest, TalliesAndSeeds) {
  std::set<int> seeds;
  std::mutex mu;
  auto client = std::make_shared<MockChatClient>(
      [&](const ChatRequest& request, int) {
        std::lock_guard<std::mutex> lock(mu);
        EXPECT_EQ(request.decode.temperature, kVoteTemperature);
        EXPECT_EQ(request.decode.top_p, kVoteTopP);
        EXPECT_EQ(request.decode.top_logprobs, 0);
        const int seed = request.decode.seed.value();
        seeds.insert(seed);
        ChatResponse r;
        r.text = seed < 3 ? "Answer: Yes" : "Answer: No";
        return r;
      });
  JudgeGateway gateway(client);
  const VoteResult v = gateway.SelfConsistency(SampleQuery(), 5);
  EXPECT_EQ(seeds, (std::set<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(v.tallies.at("Yes"), 3);
  EXPECT_EQ(v.tallies.at("No"), 2);
  EXPECT_DOUBLE_EQ(v.confidence, 0.6);
  EXPECT_EQ(v.transcript_refs.size(), 5u);
  EXPECT_EQ(std::set<std::string>(v.transcript_refs.begin(), v.transcript_refs.end()).size(), 5u);
  const JudgeDecision d = v.ToDecision("q", kYesNo);
  EXPECT_EQ(d.method, "vote");
  EXPECT_EQ(d.answer, "Yes");
  EXPECT_DOUBLE_EQ(d.confidence, 0.6);
  EXPECT_DOUBLE_EQ(d.ConfidenceOf("Yes"), 0.6);

  VoteResult minority = v;
  minority.tallies = {{"Yes", 1}, {"No", 4}};
  minority.confidence = 0.2;
  const JudgeDecision m = minority.ToDecision("q", kYesNo);
  EXPECT_EQ(m.answer, "No");
  EXPECT_DOUBLE_EQ(m.confidence, 0.8);
  EXPECT_DOUBLE_EQ(m.ConfidenceOf("Yes"), 0.2);

  VoteResult tie = v;
  tie.repetitions = 4;
  tie.tallies = {{"Yes", 2}, {"No", 2}};
  tie.confidence = 0.5;
  EXPECT_EQ(tie.ToDecision("q", kYesNo).answer, "Yes");
  ExpectCode([&] { gateway.SelfConsistency(SampleQuery(), 0); }, ErrorCode::kConfig);
}

// Counts and confidences chosen per view through the first image byte, so
// expected scores follow by hand.
ChatResponse SyntheticJudge(const ChatRequest& request, int) {
  const ChatMessage& user = request.messages.back();
  const std::uint8_t view = user.images.at(0).at(0);
  ChatResponse r;
  if (request.template_id == kJudgeCountTemplate) {
    int count = 1;
    if (user.text.find("\"legs\"") != std::string::npos) count = view == 1 ? 3 : 4;
    r.text = "{\"count\": " + std::to_string(count) + "}";
    return r;
  }
  const bool cp = request.template_id == kJudgeCpTemplate;
  const std::string pos = cp ? "Attached" : "Yes";
  const std::string neg = cp ? "Detached" : "No";
  const double p = view == 1 ? 0.8 : 0.6;
  r.text = "Answer: " + pos;
  r.logprobs = {Token(pos, std::log(p), {{pos, std::log(p)}, {neg, std::log(1 - p)}})};
  return r;
}

InstructionSpec SyntheticSpec() {
  InstructionSpec spec;
  spec.categories = {{"legs", 4}, {"seat", 1}, {"back", 1}};
  spec.attributes = {{"seat", "square"}};
  spec.connectivity = {{"seat", "legs"}};
  spec.relations = {{"back", "above", "seat"}};
  spec.shape_question = "Is it a chair?";
  return spec;
}

EvalInputs SyntheticInputs() {
  EvalInputs in;
  in.trace_id = "synthetic";
  in.goal = "A chair.";
  in.spec_override = SyntheticSpec();
  in.final_images = {{ViewId::kFront, {1}}, {ViewId::kLeft, {2}}};
  in.step_images[ViewId::kFront] = {{10}, {11}, {12}};
  in.rationales = {"First, place the legs.", "Next, add the seat.",
                   "Finally, add the back."};
  BinaryMask a(4, 1), b(4, 1);
  a.set(0, 0, true);
  a.set(1, 0, true);
  b.set(1, 0, true);
  b.set(2, 0, true);
  in.masks[ViewId::kFront] = {a, b};
  return in;
}

TEST(EvaluateTest, MultiViewScores) {
  JudgeGateway gateway(std::make_shared<MockChatClient>(SyntheticJudge));
  const MetricReport report = Evaluate(SyntheticInputs(), gateway);
  ASSERT_EQ(report.views.size(), 2u);
  const ViewReport& front = report.views[0];
  const ViewReport& left = report.views[1];
  EXPECT_EQ(front.view, ViewId::kFront);
  EXPECT_EQ(front.counts.at("legs"), 3);
  EXPECT_EQ(left.counts.at("legs"), 4);
  EXPECT_NEAR(front.scores.at(Metric::kCN), (0.75 + 1 + 1) / 3, 1e-12);
  EXPECT_NEAR(left.scores.at(Metric::kCN), 1.0, 1e-12);
  EXPECT_NEAR(front.scores.at(Metric::kSF), 0.8, 1e-12);
  EXPECT_NEAR(left.scores.at(Metric::kSF), 0.6, 1e-12);
  EXPECT_NEAR(front.scores.at(Metric::kAF), 0.8, 1e-12);
  EXPECT_NEAR(front.scores.at(Metric::kCP), 0.8, 1e-12);
  EXPECT_NEAR(left.scores.at(Metric::kVT), 0.6, 1e-12);
  // RA sees step images, whose first byte is not the front marker.
  EXPECT_NEAR(front.scores.at(Metric::kRA), 0.6, 1e-12);
  EXPECT_EQ(left.not_applicable.at(Metric::kRA), "fewer than 2 steps");
  EXPECT_DOUBLE_EQ(front.scores.at(Metric::kTS), 0.5);
  EXPECT_EQ(left.not_applicable.at(Metric::kTS), "no masks");

  EXPECT_NEAR(report.aggregate.at(Metric::kCN), 1.0, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kSF), 0.7, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kAF), 0.8, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kCP), 0.8, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kVT), 0.7, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kRA), 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(report.aggregate.at(Metric::kTS), 0.5);
  EXPECT_EQ(report.notes, (std::vector<std::string>{"instruction spec supplied by file"}));

  std::vector<std::string> ids;
  for (const JudgeDecision& d : front.decisions) ids.push_back(d.question_id);
  EXPECT_EQ(ids, (std::vector<std::string>{
                     "front/SF", "front/AF/seat/square", "front/CP/seat/legs",
                     "front/VT/back/above/seat", "front/RA/2", "front/RA/3"}));
}

TEST(EvaluateTest, ParallelJobsGiveSameReport) {
  JudgeGateway gateway(std::make_shared<MockChatClient>());
  EvalOptions serial;
  EvalOptions parallel;
  parallel.jobs = 4;
  const EvalInputs in = SyntheticInputs();
  EXPECT_EQ(Evaluate(in, gateway, serial).ToJson().dump(),
            Evaluate(in, gateway, parallel).ToJson().dump());
}

TEST(EvaluateTest, SingleStepIsNotApplicable) {
  JudgeGateway gateway(std::make_shared<MockChatClient>(SyntheticJudge));
  EvalInputs in = SyntheticInputs();
  in.final_images.erase(ViewId::kLeft);
  in.step_images[ViewId::kFront] = {{1}};
  in.rationales = {"First, build it."};
  in.masks[ViewId::kFront].resize(1);
  const MetricReport report = Evaluate(in, gateway);
  EXPECT_FALSE(report.Applicable(Metric::kTS));
  EXPECT_FALSE(report.Applicable(Metric::kRA));
  EXPECT_EQ(report.views[0].not_applicable.at(Metric::kRA), "fewer than 2 steps");
  EXPECT_EQ(report.views[0].not_applicable.at(Metric::kTS), "fewer than 2 steps");
  EXPECT_TRUE(report.Applicable(Metric::kSF));
}

TEST(EvaluateTest, StructureErrors) {
  JudgeGateway gateway(std::make_shared<MockChatClient>(SyntheticJudge));
  EvalInputs in = SyntheticInputs();
  in.rationales.pop_back();
  const std::string what =
      ExpectCode([&] { Evaluate(in, gateway); }, ErrorCode::kStructure);
  EXPECT_NE(what.find("3 step images but 2 rationales"), std::string::npos);
  in = SyntheticInputs();
  in.final_images.clear();
  ExpectCode([&] { Evaluate(in, gateway); }, ErrorCode::kStructure);
}

TEST(EvaluateTest, SelfConsistencyOption) {
  auto client = std::make_shared<MockChatClient>([](const ChatRequest& request, int) {
    if (request.template_id == kJudgeCountTemplate) {
      ChatResponse r;
      r.text = "1";
      return r;
    }
    ChatResponse r;
    const bool cp = request.template_id == kJudgeCpTemplate;
    const bool positive = request.decode.seed.value() < 3;
    r.text = std::string("Answer: ") +
             (cp ? (positive ? "Attached" : "Detached") : (positive ? "Yes" : "No"));
    return r;
  });
  JudgeGateway gateway(client);
  EvalInputs in = SyntheticInputs();
  in.final_images.erase(ViewId::kLeft);
  EvalOptions options;
  options.self_consistency = true;
  const MetricReport report = Evaluate(in, gateway, options);
  EXPECT_NEAR(report.aggregate.at(Metric::kSF), 0.6, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kCP), 0.6, 1e-12);
  EXPECT_NEAR(report.aggregate.at(Metric::kRA), 0.6, 1e-12);
  for (const JudgeDecision& d : report.views[0].decisions) EXPECT_EQ(d.method, "vote");
}

}  // namespace
}  // namespace stepwise
