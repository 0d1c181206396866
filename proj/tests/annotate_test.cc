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

#include <gtest/gtest.h>

#include "stepwise/annotate/annotator.h"
#include "stepwise/annotate/chat_client.h"
#include "stepwise/annotate/templates.h"
#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "test_util.h"

namespace stepwise {
namespace {

using Names = std::vector<std::string>;

TEST(TemplatesTest, CompiledTextMatchesAssetFiles) {
  const Names ids = TemplateIds();
  EXPECT_EQ(ids.size(), 9u);
  for (const std::string& id : ids) {
    std::string file =
        ReadTextFile(testing::SourceDir() / "assets" / "templates" / (id + ".txt"));
    if (!file.empty() && file.back() == '\n') file.pop_back();
    EXPECT_EQ(TemplateText(id), file) << id;
  }
  EXPECT_THROW(TemplateText("nope"), Error);
}

TEST(TemplatesTest, VerbatimJudgeLines) {
  const std::string af(TemplateText(kJudgeAfTemplate));
  EXPECT_NE(af.find("Task: Verify Local Part Attributes."), std::string::npos);
  EXPECT_NE(af.find("Question: Is the \"{PART_NAME}\" clearly rendered as "
                    "\"{ATTRIBUTE}\"?"),
            std::string::npos);
  const std::string sf(TemplateText(kJudgeSfTemplate));
  EXPECT_NE(sf.find("- Target Description: \"{SHAPE_DESCRIPTION}\""),
            std::string::npos);
  for (auto id : {kJudgeSfTemplate, kJudgeCpTemplate, kJudgeVtTemplate}) {
    const std::string text(TemplateText(id));
    EXPECT_NE(text.find("   - Confidence Score: (0-100%)"), std::string::npos)
        << id;
  }
  const std::string system(TemplateText(kJudgeSystemTemplate));
  EXPECT_EQ(system.rfind("You are an expert 3D geometric auditor.", 0), 0u);
}

TEST(TemplatesTest, Placeholders) {
  EXPECT_EQ(TemplatePlaceholders(TemplateText(kJudgeVtTemplate)),
            (Names{"PART_A", "PART_B", "RELATION"}));
  EXPECT_EQ(TemplatePlaceholders(TemplateText(kCotTemplate)),
            (Names{"existing_parts", "new_parts", "object_type", "prompt_text",
                   "step_note", "step_number", "total_steps"}));
  // JSON braces are not placeholders.
  EXPECT_EQ(TemplatePlaceholders(TemplateText(kJudgeCountTemplate)),
            (Names{"CATEGORY"}));
  EXPECT_EQ(TemplatePlaceholders("{a} {b c} {} {a}"), (Names{"a"}));
}

TEST(TemplatesTest, FillLeavesUnknownSlots) {
  EXPECT_EQ(FillTemplate("{A} and {B} and {A}", {{"A", "x"}}),
            "x and {B} and x");
  EXPECT_EQ(FillTemplate("{A}", {{"A", "{A}"}}), "{A}");
  const std::string filled = FillTemplate(
      TemplateText(kJudgeAfTemplate), {{"PART_NAME", "seat"}, {"ATTRIBUTE", "red"}});
  EXPECT_TRUE(TemplatePlaceholders(filled).empty());
  EXPECT_NE(filled.find("Is the \"seat\" clearly rendered as \"red\"?"),
            std::string::npos);
}

TEST(AnnotatorTest, SummarizeNamesGroupsSymmetricParts) {
  EXPECT_EQ(SummarizeNames({"base", "leg_1", "leg_2", "Legs", "seat"}),
            "base, leg (x3), seat");
  EXPECT_EQ(SummarizeNames({}), "");
}

TEST(AnnotatorTest, TransitionsAndStepNote) {
  EXPECT_EQ(ExpectedTransition(1, 1), "");
  EXPECT_EQ(ExpectedTransition(1, 4), "First");
  EXPECT_EQ(ExpectedTransition(2, 4), "Next");
  EXPECT_EQ(ExpectedTransition(3, 4), "Then");
  EXPECT_EQ(ExpectedTransition(4, 4), "Finally");
  EXPECT_EQ(ExpectedTransition(2, 2), "Finally");
  EXPECT_EQ(StepNote(3, 4), "Start the description with \"Then\".");
}

TEST(AnnotatorTest, GoalRequestAndMockResponse) {
  const Names parts = {"base", "leg", "leg", "leg", "leg", "seat", "back"};
  const std::vector<StepSummary> steps = {
      {1, {"base"}}, {2, {"leg", "leg", "leg", "leg"}}, {3, {"seat"}}, {4, {"back"}}};
  const ChatRequest with_image = BuildGoalRequest(Bytes{1, 2, 3}, parts, steps);
  const ChatRequest without = BuildGoalRequest(std::nullopt, parts, steps);
  EXPECT_EQ(with_image.template_id, "goal_prompt");
  ASSERT_EQ(with_image.messages.size(), 1u);
  EXPECT_EQ(with_image.messages[0].images.size(), 1u);
  EXPECT_TRUE(without.messages[0].images.empty());
  EXPECT_NE(with_image.CacheKey(), without.CacheKey());
  const std::string& text = with_image.UserText();
  EXPECT_NE(text.find("- base\n- leg (x4)\n- seat\n- back"), std::string::npos);
  EXPECT_NE(text.find("Step 2: leg (x4)"), std::string::npos);
  EXPECT_TRUE(TemplatePlaceholders(text).empty());

  MockChatClient mock;
  const GoalPrompt goal = GenerateGoalPrompt(Bytes{1}, parts, steps, mock);
  EXPECT_EQ(goal.text,
            "Build an object with a base, four legs, a seat, and a back.");
  EXPECT_EQ(goal.source, "mock");
  EXPECT_EQ(GoalPromptFromJson(ToJson(goal)), goal);
}

TEST(AnnotatorTest, EmptyResponsesAreErrors) {
  MockChatClient blank(ScriptedResponder({"   \n"}));
  try {
    GenerateGoalPrompt(std::nullopt, {"a"}, {}, blank);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAnnotation);
  }
  RationaleInput input;
  input.current_png = {1};
  EXPECT_THROW(GenerateStepRationale(input, blank), Error);
}

TEST(AnnotatorTest, RationaleRequestCarriesBothImages) {
  RationaleInput input;
  input.step = 2;
  input.total_steps = 3;
  input.object_type = "Chair";
  input.prompt_text = "A chair.";
  input.existing_names = {"base"};
  input.delta_names = {"leg_1", "leg_2"};
  input.previous_png = Bytes{9};
  input.current_png = {8};
  const ChatRequest request = BuildRationaleRequest(input);
  EXPECT_EQ(request.messages[0].images, (std::vector<Bytes>{{9}, {8}}));
  const std::string& text = request.UserText();
  EXPECT_NE(text.find("Step 2 of 3 in building a Chair."), std::string::npos);
  EXPECT_NE(text.find("Start the description with \"Next\"."), std::string::npos);
  EXPECT_NE(text.find("leg (x2)"), std::string::npos);

  input.step = 1;
  input.previous_png.reset();
  input.existing_names.clear();
  const ChatRequest first = BuildRationaleRequest(input);
  EXPECT_EQ(first.messages[0].images.size(), 1u);
  EXPECT_NE(first.UserText().find("None"), std::string::npos);

  input.step = 4;
  EXPECT_THROW(BuildRationaleRequest(input), Error);
  input.step = 0;
  EXPECT_THROW(BuildRationaleRequest(input), Error);
}

TEST(AnnotatorTest, MockRationaleValidates) {
  MockChatClient mock;
  RationaleInput input;
  input.step = 2;
  input.total_steps = 3;
  input.object_type = "Chair";
  input.existing_names = {"base"};
  input.delta_names = {"leg_1", "leg_2", "leg_3", "leg_4"};
  input.previous_png = Bytes{1};
  input.current_png = {2};
  const StepRationale r = GenerateStepRationale(input, mock);
  EXPECT_EQ(r.text,
            "Next, attach the four legs to the base of the partially built "
            "Chair.");
  EXPECT_EQ(r.slots.action_verb, "attach");
  EXPECT_EQ(r.slots.new_parts, "the four legs");
  EXPECT_EQ(r.slots.preposition, "to");
  EXPECT_EQ(r.slots.anchor, "the base of the partially built Chair");
  const ValidationReport report =
      ValidateRationale(r, input.delta_names, 2, 3);
  EXPECT_TRUE(report.ok()) << report.ToJson().dump();
  EXPECT_EQ(report.CountSeverity(Severity::kWarning), 0)
      << report.ToJson().dump();
  EXPECT_EQ(StepRationaleFromJson(ToJson(r)), r);
  // Same request, same answer.
  EXPECT_EQ(GenerateStepRationale(input, mock).text, r.text);
}

TEST(AnnotatorTest, ParseSlotsCases) {
  RationaleSlots s = ParseSlots("Then, mount the seat onto the legs, centered.");
  EXPECT_EQ(s.action_verb, "mount");
  EXPECT_EQ(s.new_parts, "the seat");
  EXPECT_EQ(s.preposition, "onto");
  EXPECT_EQ(s.anchor, "the legs");

  s = ParseSlots("A wooden chair appears.");
  EXPECT_FALSE(s.action_verb);
  EXPECT_FALSE(s.new_parts);

  s = ParseSlots("Finally add the backrest. It rests on the seat.");
  EXPECT_EQ(s.action_verb, "add");
  EXPECT_EQ(s.new_parts, "the backrest");
  EXPECT_FALSE(s.preposition);
}

TEST(AnnotatorTest, ValidateRationaleCodes) {
  StepRationale r;
  r.text = "   ";
  EXPECT_TRUE(ValidateRationale(r, {"seat"}, 1, 2).HasCode("EMPTY_TEXT"));

  r.text = "Next, attach the wheel to the base of the partially built chair.";
  ValidationReport report = ValidateRationale(r, {"seat"}, 2, 2);
  EXPECT_TRUE(report.HasCode("PART_NOT_IN_DELTA"));
  EXPECT_TRUE(report.HasCode("TRANSITION"));
  EXPECT_FALSE(report.ok());

  r.text = "Attach seat.";
  report = ValidateRationale(r, {"seat"}, 1, 1);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.HasCode("LENGTH"));
  EXPECT_TRUE(report.HasCode("MISSING_SLOT"));
  EXPECT_FALSE(report.HasCode("TRANSITION"));

  r.text = "First, place the chair legs upright at the center as the base "
           "for support.";
  report = ValidateRationale(r, {"leg_1", "leg_2"}, 1, 3);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.CountSeverity(Severity::kWarning), 0)
      << report.ToJson().dump();
}

}  // namespace
}  // namespace stepwise
