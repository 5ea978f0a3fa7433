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

#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "annotkit/corpus.hpp"
#include "annotkit/csv.hpp"
#include "annotkit/errors.hpp"
#include "test_support.hpp"

namespace annotkit {
namespace {

using testing::MakePost;

IngestResult FromString(const std::string& text, InputFormat f = InputFormat::kJsonl) {
  std::istringstream in(text);
  return IngestStream(in, f);
}

TEST(Ingest, EmptyInput) {
  auto r = FromString("");
  EXPECT_TRUE(r.corpus.empty());
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.skipped(), 0u);
}

TEST(Ingest, SkipsRecordMissingUser) {
  auto r = FromString(
      R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":10,"text":"x"})" "\n"
      R"({"post_id":"2","thread_id":"t","created_at":11,"text":"y"})" "\n"
      R"({"post_id":"3","user_id":"b","thread_id":"t","created_at":12,"text":"z"})" "\n");
  EXPECT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.skipped_missing_field, 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.corpus.Find("2"), nullptr);
}

TEST(Ingest, CollapsesBlankLines) {
  auto r = FromString(R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":10,"text":"a\n\n\nb"})");
  ASSERT_EQ(r.corpus.size(), 1u);
  EXPECT_EQ(r.corpus.posts()[0].text, "a\nb");
}

TEST(Ingest, DuplicateKeepsFirst) {
  auto r = FromString(
      R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":10,"text":"first"})" "\n"
      R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":10,"text":"second"})" "\n");
  ASSERT_EQ(r.corpus.size(), 1u);
  EXPECT_EQ(r.duplicates, 1u);
  EXPECT_EQ(r.corpus.posts()[0].text, "first");
}

TEST(Ingest, BadTimestampAndMalformedLinesAreCounted) {
  auto r = FromString(
      R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":"yesterday","text":"x"})" "\n"
      "{not json\n"
      R"({"post_id":"2","user_id":"a","thread_id":"t","created_at":"2020-01-01T00:00:00Z","text":"x"})" "\n");
  EXPECT_EQ(r.corpus.size(), 1u);
  EXPECT_EQ(r.skipped_bad_timestamp, 1u);
  EXPECT_EQ(r.skipped_malformed, 1u);
}

TEST(Ingest, CsvMatchesJsonl) {
  const std::string jsonl =
      R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":"2021-03-04T05:06:07Z","text":"he said \"no\", twice"})" "\n"
      R"({"post_id":"2","user_id":"b","thread_id":"u","created_at":1614834367,"text":"line one\nline two"})" "\n";
  const std::string csv_text =
      "post_id,user_id,thread_id,created_at,text\r\n"
      "1,a,t,2021-03-04T05:06:07Z,\"he said \"\"no\"\", twice\"\r\n"
      "2,b,u,1614834367,\"line one\nline two\"\r\n";
  auto a = FromString(jsonl);
  auto b = FromString(csv_text, InputFormat::kCsv);
  EXPECT_EQ(a.corpus.posts(), b.corpus.posts());
  EXPECT_EQ(a.corpus.size(), 2u);
}

TEST(Ingest, MissingFileNamesPath) {
  try {
    Ingest("/nonexistent/dir/posts.jsonl", InputFormat::kJsonl);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/posts.jsonl"), std::string::npos);
  }
}

TEST(Ingest, ExportRoundTrip) {
  Corpus c;
  c.Add(MakePost("p1", "u1", 100, "a\nb"));
  c.Add(MakePost("p2", "u2", 50, "quote \" and \\"));
  std::ostringstream out;
  ExportJsonl(c, out);
  auto r = FromString(out.str());
  EXPECT_EQ(r.corpus.posts(), c.posts());
}

TEST(Ingest, FormatFromPath) {
  EXPECT_EQ(FormatFromPath("x/posts.csv"), InputFormat::kCsv);
  EXPECT_EQ(FormatFromPath("x/posts.jsonl"), InputFormat::kJsonl);
}

// Reference implementation of the normalization rule using std::regex.
std::string RegexPreprocess(const std::string& s) {
  std::string t = std::regex_replace(s, std::regex("\r\n"), "\n");
  t = std::regex_replace(t, std::regex("\r"), "\n");
  return std::regex_replace(t, std::regex("\n+"), "\n");
}

TEST(Preprocess, Examples) {
  EXPECT_EQ(Preprocess("x"), "x");
  EXPECT_EQ(Preprocess("a\n\n\nb\n\nc"), "a\nb\nc");
  EXPECT_EQ(Preprocess("a\r\n\r\nb"), "a\nb");
  EXPECT_EQ(Preprocess(""), "");
}

TEST(Preprocess, MatchesRegexOracleAndIsIdempotent) {
  std::mt19937_64 rng(7);
  const char alphabet[] = {'a', 'b', ' ', '\n', '\r', 'x'};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const int len = static_cast<int>(rng() % 30);
    for (int i = 0; i < len; ++i) s.push_back(alphabet[rng() % sizeof(alphabet)]);
    const std::string once = Preprocess(s);
    ASSERT_EQ(once, RegexPreprocess(s)) << "input length " << s.size();
    ASSERT_EQ(Preprocess(once), once);
  }
}

TEST(Timestamp, Formats) {
  EXPECT_EQ(ParseTimestamp("0").time_since_epoch().count(), 0);
  EXPECT_EQ(ParseTimestamp("1614834367").time_since_epoch().count(), 1614834367);
  EXPECT_EQ(ParseTimestamp("2021-03-04T05:06:07Z").time_since_epoch().count(), 1614834367);
  EXPECT_EQ(ParseTimestamp("2021-03-04 05:06:07.250Z").time_since_epoch().count(), 1614834367);
  EXPECT_EQ(ParseTimestamp("2021-03-04T07:06:07+02:00").time_since_epoch().count(), 1614834367);
  EXPECT_EQ(FormatTimestamp(ParseTimestamp("1614834367")), "2021-03-04T05:06:07Z");
  EXPECT_THROW(ParseTimestamp("2021-13-01T00:00:00Z"), Error);
  EXPECT_THROW(ParseTimestamp("soon"), Error);
  EXPECT_THROW(ParseTimestamp(""), Error);
}

Corpus TenPosts() {
  Corpus c;
  for (int i = 0; i < 10; ++i) c.Add(MakePost("p" + std::to_string(i), "u", i));
  return c;
}

TEST(Sample, FullSizeIsPermutation) {
  const Corpus c = TenPosts();
  auto s = Sample(c, 10, 3);
  std::set<std::string> ids;
  for (const auto& p : s) ids.insert(p.post_id);
  EXPECT_EQ(ids.size(), 10u);
}

TEST(Sample, Deterministic) {
  const Corpus c = TenPosts();
  EXPECT_EQ(Sample(c, 4, 99), Sample(c, 4, 99));
  EXPECT_THROW(Sample(c, 11, 1), Error);
}

TEST(Sample, SingleDrawFrequencyWithinThreeSigma) {
  const Corpus c = TenPosts();
  std::map<std::string, int> counts;
  const int draws = 10000;
  for (int seed = 0; seed < draws; ++seed) counts[Sample(c, 1, seed)[0].post_id]++;
  ASSERT_EQ(counts.size(), 10u);
  const double sigma = std::sqrt(draws * 0.1 * 0.9);
  for (const auto& [id, n] : counts) EXPECT_NEAR(n, 1000, 3 * sigma) << id;
}

TEST(Timeline, SortsAndBreaksTiesById) {
  Corpus c;
  c.Add(MakePost("z", "u", 30));
  c.Add(MakePost("b", "u", 10));
  c.Add(MakePost("a", "u", 10));
  c.Add(MakePost("other", "v", 5));
  auto t = Timeline(c, "u");
  ASSERT_EQ(t.posts.size(), 3u);
  EXPECT_EQ(t.posts[0].post_id, "a");
  EXPECT_EQ(t.posts[1].post_id, "b");
  EXPECT_EQ(t.posts[2].post_id, "z");
  EXPECT_EQ(Timeline(c, "v").posts.size(), 1u);
  EXPECT_THROW(Timeline(c, "nobody"), Error);
  EXPECT_EQ(AllTimelines(c).size(), 2u);
}

TEST(Csv, QuotedFieldsAndLineNumbers) {
  std::istringstream in("a,\"b,c\"\r\n\"multi\nline\",\"\"\"q\"\"\"\nlast,\n");
  csv::Reader r(in);
  auto row = r.Next();
  ASSERT_TRUE(row);
  EXPECT_EQ(*row, (std::vector<std::string>{"a", "b,c"}));
  row = r.Next();
  ASSERT_TRUE(row);
  EXPECT_EQ(r.line(), 2u);
  EXPECT_EQ(*row, (std::vector<std::string>{"multi\nline", "\"q\""}));
  row = r.Next();
  ASSERT_TRUE(row);
  EXPECT_EQ(r.line(), 4u);
  EXPECT_EQ(*row, (std::vector<std::string>{"last", ""}));
  EXPECT_FALSE(r.Next());
}

TEST(Csv, UnterminatedQuoteThrows) {
  std::istringstream in("a,\"open\n");
  csv::Reader r(in);
  EXPECT_THROW(r.Next(), Error);
}

TEST(Csv, EscapeRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "new\nline"};
  std::istringstream in(csv::JoinRow(fields) + "\n");
  csv::Reader r(in);
  EXPECT_EQ(*r.Next(), fields);
}

}  // namespace
}  // namespace annotkit
