// Copyright 2026 The annotkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>

#include <gtest/gtest.h>

#include "annotkit/batching.hpp"
#include "annotkit/errors.hpp"
#include "annotkit/prompt.hpp"
#include "annotkit/response.hpp"
#include "annotkit/taxonomy.hpp"
#include "annotkit/tokens.hpp"
#include "test_support.hpp"

namespace annotkit {
namespace {

using testing::MakePost;

TEST(Label, InvariantEnforced) {
  EXPECT_THROW(Label(ViolenceClass::kNonViolent, Directedness::kDirected), Error);
  EXPECT_THROW(Label(ViolenceClass::kExplicit, Directedness::kNotApplicable), Error);
  EXPECT_NO_THROW(Label(ViolenceClass::kImplicit, Directedness::kSelfDirected));
}

TEST(Label, ParseWithSynonyms) {
  EXPECT_EQ(ParseLabel("non-violent", ""), Label::NonViolent());
  EXPECT_EQ(ParseLabel("none", "n/a"), Label::NonViolent());
  EXPECT_EQ(ParseLabel("Explicit", "directed"), Label(ViolenceClass::kExplicit, Directedness::kDirected));
  EXPECT_EQ(ParseLabel("implicit", "UNDIRECTED "), Label(ViolenceClass::kImplicit, Directedness::kGeneral));
  EXPECT_EQ(ParseLabel(" explicit", "self"), Label(ViolenceClass::kExplicit, Directedness::kSelfDirected));
  EXPECT_THROW(ParseLabel("violent-ish", "directed"), Error);
  EXPECT_THROW(ParseLabel("explicit", ""), Error);
  // A non-violent verdict discards whatever direction came with it.
  EXPECT_EQ(ParseLabel("non-violent", "directed"), Label::NonViolent());
}

TEST(Label, CodesRoundTrip) {
  EXPECT_EQ(LabelCode(Label::NonViolent()), "NV");
  EXPECT_EQ(LabelCode(Label(ViolenceClass::kExplicit, Directedness::kSelfDirected)), "EV-S");
  std::set<std::string> codes;
  for (int i = 0; i < kFullClassCount; ++i) {
    const Label l = AllLabels()[i];
    EXPECT_EQ(l.index(), i);
    EXPECT_EQ(Label::FromIndex(i), l);
    EXPECT_EQ(LabelFromCode(LabelCode(l)), l);
    codes.insert(LabelCode(l));
  }
  EXPECT_EQ(codes.size(), 7u);
  EXPECT_FALSE(TryLabelFromCode("XV-D"));
  EXPECT_THROW(LabelFromCode("EV"), Error);
}

TEST(Label, CoarseProjectionAndShares) {
  EXPECT_EQ(Coarse(LabelFromCode("EV-D")), ViolenceClass::kExplicit);
  EXPECT_EQ(Coarse(LabelFromCode("IV-S")), ViolenceClass::kImplicit);
  const std::vector<Label> labels = {LabelFromCode("NV"), LabelFromCode("NV"), LabelFromCode("EV-D"),
                                     LabelFromCode("IV-G")};
  const auto shares = CoarseShares(labels);
  EXPECT_DOUBLE_EQ(shares[0], 0.5);
  EXPECT_DOUBLE_EQ(shares[1], 0.25);
  EXPECT_DOUBLE_EQ(shares[2], 0.25);
}

TEST(Tokens, QuarterCharEstimate) {
  EXPECT_EQ(QuarterCharEstimate(""), 0u);
  EXPECT_EQ(QuarterCharEstimate("abcd"), 1u);
  EXPECT_EQ(QuarterCharEstimate("abcde"), 2u);
  EXPECT_EQ(CountCodePoints("h\xC3\xA9llo"), 5u);
}

TEST(Prompt, BuiltinsValidate) {
  const auto names = BuiltinTemplateNames();
  EXPECT_EQ(names.size(), 5u);
  for (const auto& n : names) {
    const PromptTemplate t = BuiltinTemplate(n);
    EXPECT_NO_THROW(t.Validate()) << n;
    EXPECT_EQ(ResolveTemplate("builtin:" + n).template_id, t.template_id);
  }
  EXPECT_THROW(BuiltinTemplate("nope"), Error);
  EXPECT_EQ(BuiltinTemplate("final").response_mode, ResponseMode::kStructured);
}

TEST(Prompt, ValidateRejectsBadTemplates) {
  PromptTemplate t;
  t.template_id = "x";
  EXPECT_THROW(t.Validate(), Error);
  t.system_text = "Classify the posts.";
  t.response_mode = ResponseMode::kStructured;
  EXPECT_THROW(t.Validate(), Error);
  t.response_mode = ResponseMode::kPlain;
  EXPECT_NO_THROW(t.Validate());
}

TEST(Prompt, SerializeParseRoundTrip) {
  PromptTemplate t = BuiltinTemplate("give-reason-few-examples");
  ASSERT_FALSE(t.few_shot_examples.empty());
  const PromptTemplate back = ParseTemplate(SerializeTemplate(t));
  EXPECT_EQ(back.template_id, t.template_id);
  EXPECT_EQ(back.system_text, t.system_text);
  EXPECT_EQ(back.response_mode, t.response_mode);
  EXPECT_EQ(back.requires_reason, t.requires_reason);
  ASSERT_EQ(back.few_shot_examples.size(), t.few_shot_examples.size());
  for (std::size_t i = 0; i < t.few_shot_examples.size(); ++i) {
    EXPECT_EQ(back.few_shot_examples[i].text, t.few_shot_examples[i].text);
    EXPECT_EQ(back.few_shot_examples[i].label, t.few_shot_examples[i].label);
  }
}

TEST(Prompt, ShippedTemplateFileLoads) {
  const PromptTemplate t = ResolveTemplate(ANNOTKIT_SOURCE_DIR "/templates/short-structured.txt");
  EXPECT_EQ(t.template_id, "short-structured");
  EXPECT_EQ(t.response_mode, ResponseMode::kStructured);
  ASSERT_EQ(t.few_shot_examples.size(), 3u);
  EXPECT_EQ(t.few_shot_examples[2].label, LabelFromCode("EV-S"));
}

TEST(Prompt, RenderUserMessage) {
  PromptTemplate t = BuiltinTemplate("basic");
  std::vector<Post> one = {MakePost("1", "u", 0, "hello")};
  EXPECT_EQ(RenderRequest(t, one).user_message, "Post 1: hello");
  std::vector<Post> two = {MakePost("1", "u", 0, "first\nsecond"), MakePost("2", "u", 0, "third")};
  const auto r = RenderRequest(t, two);
  EXPECT_EQ(r.user_message, "Post 1: first second\nPost 2: third");
  EXPECT_EQ(r.system_message, RenderSystemMessage(t));
  EXPECT_THROW(RenderRequest(t, std::span<const Post>{}), Error);
}

TEST(Prompt, FewShotExamplesRendered) {
  PromptTemplate t = BuiltinTemplate("basic");
  t.few_shot_examples = {{"I will end you", LabelFromCode("EV-D")}};
  const std::string sys = RenderSystemMessage(t);
  EXPECT_NE(sys.find("Example 1: I will end you"), std::string::npos);
  EXPECT_NE(sys.find("explicit, directed"), std::string::npos);
}

std::vector<Post> ManyPosts(int n, const std::string& text = "some words here") {
  std::vector<Post> posts;
  for (int i = 0; i < n; ++i) posts.push_back(MakePost("p" + std::to_string(i), "u", i, text));
  return posts;
}

TEST(Batching, PartitionArithmetic) {
  const PromptTemplate t = BuiltinTemplate("final");
  BatchingOptions o;
  o.batch_size = 50;
  EXPECT_TRUE(AssembleBatches({}, t, o).batches.empty());
  const auto posts = ManyPosts(120);
  const auto plan = AssembleBatches(posts, t, o);
  ASSERT_EQ(plan.batches.size(), 3u);
  EXPECT_EQ(plan.batches[0].posts.size(), 50u);
  EXPECT_EQ(plan.batches[1].posts.size(), 50u);
  EXPECT_EQ(plan.batches[2].posts.size(), 20u);
  EXPECT_EQ(plan.batches[0].batch_id, "b00001");
  EXPECT_EQ(plan.batches[2].posts.front().ordinal, 1);
  EXPECT_EQ(plan.batches[2].posts.back().post_id, "p119");
}

TEST(Batching, FixedTokenCountsFitBudget) {
  // A 500-token prompt and 10 posts of 50 tokens each fit a 4000-token budget.
  PromptTemplate t;
  t.template_id = "flat";
  t.system_text = std::string(2000, 'x');
  t.response_mode = ResponseMode::kPlain;
  BatchingOptions o;
  o.batch_size = 50;
  o.token_budget = 4000;
  o.estimator = [](std::string_view s) { return s.size() >= 2000 ? std::size_t{500} : std::size_t{50}; };
  const auto plan = AssembleBatches(ManyPosts(10), t, o);
  ASSERT_EQ(plan.batches.size(), 1u);
  EXPECT_EQ(EstimateBatchTokens(plan.batches[0], o.estimator), 1000u);
}

TEST(Batching, SplitsOverBudgetAndExcludesGiantPosts) {
  PromptTemplate t;
  t.template_id = "flat";
  t.system_text = "p";
  t.response_mode = ResponseMode::kPlain;
  BatchingOptions o;
  o.batch_size = 10;
  o.token_budget = 100;
  o.estimator = [](std::string_view s) { return s.find("huge") != std::string_view::npos ? std::size_t{500} : std::size_t{20}; };
  auto posts = ManyPosts(10);
  posts[3].text = "huge";
  const auto plan = AssembleBatches(posts, t, o);
  ASSERT_EQ(plan.excluded.size(), 1u);
  EXPECT_EQ(plan.excluded[0].post_ids, std::vector<std::string>{"p3"});
  std::size_t total = 0;
  for (const auto& b : plan.batches) {
    EXPECT_LE(EstimateBatchTokens(b, o.estimator), 100u);
    total += b.posts.size();
  }
  EXPECT_EQ(total, 9u);
  o.batch_size = 0;
  EXPECT_THROW(AssembleBatches(posts, t, o), Error);
}

BatchRequest Batch(int n, ResponseMode mode = ResponseMode::kStructured) {
  PromptTemplate t = BuiltinTemplate(mode == ResponseMode::kStructured ? "final" : "basic");
  std::vector<Post> posts;
  for (int i = 1; i <= n; ++i) posts.push_back(MakePost("id" + std::to_string(i), "u", i, "text " + std::to_string(i)));
  return MakeBatch("b1", t, posts);
}

TEST(Response, StructuredSinglePost) {
  const auto out = ParseResponse(R"({"1": {"violence":"non-violent"}})", Batch(1), ResponseMode::kStructured, "m");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, Label::NonViolent());
  EXPECT_EQ(out[0].post_id, "id1");
  EXPECT_EQ(out[0].annotator_id, "m");
  EXPECT_EQ(out[0].ordinal, 1);
}

TEST(Response, MissingOrdinalIsNamed) {
  try {
    ParseResponse(R"({"1": {"violence":"non-violent"}, "2": {"code":"EV-D"}})", Batch(3),
                  ResponseMode::kStructured, "m");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignment);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Response, ExtraOrdinalAndBadLabelFail) {
  EXPECT_THROW(ParseResponse(R"({"1":"NV","2":"NV"})", Batch(1), ResponseMode::kStructured, "m"), Error);
  try {
    ParseResponse(R"({"1": {"violence":"mildly"}})", Batch(1), ResponseMode::kStructured, "m");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
  }
  EXPECT_THROW(ParseResponse("I cannot help with that.", Batch(1), ResponseMode::kStructured, "m"), Error);
}

TEST(Response, ReasonKeptVerbatim) {
  const auto out = ParseResponse(
      R"({"Post 1": {"reason": "most important words: 'rope', 'deserve'", "violence": "implicit", "direction": "self-directed"}})",
      Batch(1), ResponseMode::kStructured, "m");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].reason.value(), "most important words: 'rope', 'deserve'");
  EXPECT_EQ(out[0].label, LabelFromCode("IV-S"));
}

TEST(Response, WrapperObjectAndTextEchoKeys) {
  const auto out = ParseResponse(
      R"(Sure: {"classifications": {"text 2": "EV-G", "text 1": {"code": "NV"}}})", Batch(2),
      ResponseMode::kStructured, "m");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].post_id, "id1");
  EXPECT_EQ(out[1].label, LabelFromCode("EV-G"));
}

TEST(Response, PlainLines) {
  const auto out = ParseResponse("Post 1: non-violent\nPost 2: explicit, directed — most important words: 'die'\n",
                                 Batch(2, ResponseMode::kPlain), ResponseMode::kPlain, "m");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].label, LabelFromCode("EV-D"));
  EXPECT_EQ(out[1].reason.value(), "most important words: 'die'");
  EXPECT_THROW(ParseResponse("Post 1: non-violent\nPost 1: non-violent\n", Batch(2, ResponseMode::kPlain),
                             ResponseMode::kPlain, "m"),
               Error);
}

}  // namespace
}  // namespace annotkit
