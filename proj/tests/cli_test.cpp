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

#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "annotkit/corpus.hpp"
#include "cli.hpp"
#include "test_support.hpp"

namespace annotkit {
namespace {

using testing::ReadText;
using testing::TempDir;
using testing::WriteText;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string SyntheticJsonl(int n) {
  const std::vector<std::string> texts = {"I will kill you", "good morning", "everyone should die",
                                          "better off without me", "see you later"};
  std::string s;
  for (int i = 0; i < n; ++i) {
    nlohmann::json j = {{"post_id", "p" + std::to_string(i)},
                        {"user_id", "u" + std::to_string(i % 13)},
                        {"thread_id", "t" + std::to_string(i % 4)},
                        {"created_at", 1'500'000'000LL + i * 7200LL * (1 + i % 5)},
                        {"text", texts[i % texts.size()] + " " + std::to_string(i)}};
    s += j.dump() + "\n";
  }
  return s;
}

TEST(Cli, IngestSummaryAndCsvEquality) {
  TempDir dir("cli-ingest");
  WriteText(dir / "posts.jsonl",
            R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":10,"text":"x, \"y\""})" "\n"
            R"({"post_id":"2","user_id":"b","thread_id":"t","created_at":20,"text":"two\nlines"})" "\n"
            R"({"post_id":"3","thread_id":"t","created_at":20,"text":"no user"})" "\n");
  WriteText(dir / "posts.csv",
            "post_id,user_id,thread_id,created_at,text\n1,a,t,10,\"x, \"\"y\"\"\"\n2,b,t,20,\"two\nlines\"\n");
  auto r = Cli({"ingest", (dir / "posts.jsonl").string(), "-o", (dir / "j").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("2 posts, 1 skipped", 0), 0u) << r.out;
  r = Cli({"ingest", (dir / "posts.csv").string(), "-o", (dir / "c").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(ReadText(dir / "j/corpus.jsonl"), ReadText(dir / "c/corpus.jsonl"));
  const auto report = nlohmann::json::parse(ReadText(dir / "j/ingest_report.json"));
  EXPECT_EQ(report["skipped_missing_field"], 1);
  EXPECT_EQ(report["meta"]["tool"], "annotkit");
}

TEST(Cli, BadPathAndUsageErrors) {
  auto r = Cli({"ingest", "/no/such/posts.jsonl"});
  EXPECT_EQ(r.code, cli::kExitIo);
  EXPECT_NE(r.err.find("/no/such/posts.jsonl"), std::string::npos);
  EXPECT_EQ(Cli({}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(Cli({"cost"}).code, cli::kExitUsage);
}

TEST(Cli, AnnotateWritesArtifactsDeterministically) {
  TempDir dir("cli-annotate");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(1000));
  const std::vector<std::string> base = {"annotate", "--corpus", (dir / "posts.jsonl").string(), "--backend",
                                         "mock", "--batch-size", "50"};
  auto args = base;
  args.insert(args.end(), {"-o", (dir / "a").string()});
  auto r = Cli(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string annotations = ReadText(dir / "a/annotations.jsonl");
  EXPECT_EQ(std::count(annotations.begin(), annotations.end(), '\n'), 1000);
  EXPECT_TRUE(ReadText(dir / "a/failures.jsonl").empty());
  const auto run = nlohmann::json::parse(ReadText(dir / "a/run.json"));
  EXPECT_EQ(run["annotated_posts"], 1000);

  args = base;
  args.insert(args.end(), {"-o", (dir / "b").string()});
  ASSERT_EQ(Cli(args).code, cli::kExitOk);
  EXPECT_EQ(annotations, ReadText(dir / "b/annotations.jsonl"));
  EXPECT_EQ(ReadText(dir / "a/run.json"), ReadText(dir / "b/run.json"));

  args = base;
  args.insert(args.end(), {"--limit", "0"});
  EXPECT_EQ(Cli(args).code, cli::kExitUsage);

  args = base;
  args.insert(args.end(), {"--limit", "10", "--seed", "4", "-o", (dir / "c").string()});
  ASSERT_EQ(Cli(args).code, cli::kExitOk);
  const std::string sample = ReadText(dir / "c/annotations.jsonl");
  EXPECT_EQ(std::count(sample.begin(), sample.end(), '\n'), 10);
}

TEST(Cli, AnnotateReportsPartialFailureAndMissingCredential) {
  TempDir dir("cli-partial");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(200));
  auto r = Cli({"annotate", "--corpus", (dir / "posts.jsonl").string(), "--mock-corruption-rate", "1", "-o",
                (dir / "a").string()});
  EXPECT_EQ(r.code, cli::kExitPartial);
  EXPECT_FALSE(ReadText(dir / "a/failures.jsonl").empty());
  ::unsetenv("ANNOTKIT_CLI_TEST_KEY");
  r = Cli({"annotate", "--corpus", (dir / "posts.jsonl").string(), "--backend", "remote", "--endpoint",
           "http://127.0.0.1:9/x", "--api-key-env", "ANNOTKIT_CLI_TEST_KEY"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("ANNOTKIT_CLI_TEST_KEY"), std::string::npos);
}

TEST(Cli, RecordThenReplay) {
  TempDir dir("cli-replay");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(60));
  const std::string corpus = (dir / "posts.jsonl").string();
  ASSERT_EQ(Cli({"annotate", "--corpus", corpus, "--batch-size", "20", "--record", (dir / "fx.jsonl").string(),
                 "-o", (dir / "live").string()})
                .code,
            cli::kExitOk);
  auto r = Cli({"annotate", "--corpus", corpus, "--batch-size", "20", "--backend", "replay", "--fixture",
                (dir / "fx.jsonl").string(), "-o", (dir / "replay").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(ReadText(dir / "live/annotations.jsonl"), ReadText(dir / "replay/annotations.jsonl"));
}

TEST(Cli, SessionsOnThreePostFixture) {
  TempDir dir("cli-sessions");
  WriteText(dir / "posts.jsonl",
            R"({"post_id":"1","user_id":"a","thread_id":"t","created_at":0,"text":"x"})" "\n"
            R"({"post_id":"2","user_id":"a","thread_id":"t","created_at":1800,"text":"x"})" "\n"
            R"({"post_id":"3","user_id":"a","thread_id":"t","created_at":7200,"text":"x"})" "\n");
  auto r = Cli({"sessions", "--corpus", (dir / "posts.jsonl").string(), "--threshold", "1h", "-o",
                (dir / "s").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("threshold 1h: 2 sessions"), std::string::npos) << r.out;
  const auto doc = nlohmann::json::parse(ReadText(dir / "s/sessions.json"));
  EXPECT_EQ(doc["segmentation"][0]["sessions"], 2);
}

TEST(Cli, RegressPerfectLine) {
  TempDir dir("cli-regress");
  WriteText(dir / "series.csv", "bin_start,share,n\n0,0,5\n1,1,5\n2,2,5\n3,3,5\n4,4,5\n");
  auto r = Cli({"regress", "--series", (dir / "series.csv").string(), "-o", (dir / "r").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(ReadText(dir / "r/regression.json"));
  EXPECT_NEAR(doc["regression"]["beta"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["regression"]["stars"], "***");
}

TEST(Cli, RegressFromCorpusWithFigureData) {
  TempDir dir("cli-figures");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(400));
  const std::string corpus = (dir / "posts.jsonl").string();
  ASSERT_EQ(Cli({"annotate", "--corpus", corpus, "-o", (dir / "a").string()}).code, cli::kExitOk);
  auto r = Cli({"regress", "--corpus", corpus, "--annotations", (dir / "a/annotations.jsonl").string(),
                "--scope", "user", "--figure-data", (dir / "fig").string(), "-o", (dir / "r").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "fig/violence_a.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fig/directedness_h.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fig/regressions.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "r/series.csv"));
}

TEST(Cli, CostMatchesProjection) {
  auto r = Cli({"cost", "--posts", "33028", "--batch-size", "50"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("≈$20 input cost"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("$0.000600 per post"), std::string::npos) << r.out;
  r = Cli({"cost", "--posts", "33028", "--batch-size", "1"});
  EXPECT_NE(r.out.find("($181.65)"), std::string::npos) << r.out;
}

TEST(Cli, AgreeThreeFilesAndSelf) {
  TempDir dir("cli-agree");
  auto write = [&](const std::string& name, const std::vector<std::string>& codes) {
    std::string s;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      s += nlohmann::json({{"post_id", "p" + std::to_string(i)}, {"annotator_id", name}, {"code", codes[i]}}).dump() + "\n";
    }
    WriteText(dir / (name + ".jsonl"), s);
  };
  write("human-a", {"NV", "EV-D", "IV-G", "NV", "NV", "EV-G"});
  write("model-x", {"NV", "EV-D", "NV", "NV", "EV-G", "EV-G"});
  write("model-y", {"NV", "NV", "IV-G", "NV", "NV", "EV-G"});
  auto r = Cli({"agree", (dir / "human-a.jsonl").string(), (dir / "model-x.jsonl").string(),
                (dir / "model-y.jsonl").string(), "-o", (dir / "out").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(ReadText(dir / "out/agreement.json"));
  EXPECT_EQ(doc["annotators"].size(), 3u);
  EXPECT_EQ(doc["pairs"].size(), 6u);
  EXPECT_EQ(doc["is_human"][0], true);
  r = Cli({"agree", (dir / "model-x.jsonl").string(), (dir / "model-x.jsonl").string(), "-o",
           (dir / "self").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("| model-x | - | 1.00*/1.00*/1.00* |"), std::string::npos) << r.out;
  EXPECT_EQ(Cli({"agree", (dir / "model-x.jsonl").string()}).code, cli::kExitUsage);
}

TEST(Cli, SweepFromStoredDistributions) {
  TempDir dir("cli-sweep");
  WriteText(dir / "table.json", R"({"batch_sizes":[10,20,50,100,200],
    "distributions":[[0.58,0.28,0.14],[0.62,0.26,0.12],[0.70,0.21,0.09],[0.72,0.22,0.06],[0.82,0.16,0.02]],
    "reference":[0.70,0.22,0.07]})");
  auto r = Cli({"sweep", "--from-json", (dir / "table.json").string(), "-o", (dir / "s").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(ReadText(dir / "s/sweep.json"));
  EXPECT_EQ(doc["chosen_size"], 50);
}

TEST(Cli, SweepWithMockAndReport) {
  TempDir dir("cli-sweep-mock");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(300));
  const std::string corpus = (dir / "posts.jsonl").string();
  ASSERT_EQ(Cli({"annotate", "--corpus", corpus, "--batch-size", "10", "--run-id", "human-proxy", "-o",
                 (dir / "h").string()})
                .code,
            cli::kExitOk);
  auto r = Cli({"sweep", "--corpus", corpus, "--sizes", "10,50,100", "--mock-half-size", "30", "--human",
                (dir / "h/annotations.jsonl").string(), "-o", (dir / "s").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("Selected batch size: 10"), std::string::npos) << r.out;
  r = Cli({"report", "--corpus", corpus, "--annotations", (dir / "h/annotations.jsonl").string(), "-o",
           (dir / "rep").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(ReadText(dir / "rep/report.md").find("Posts per user"), std::string::npos);
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  TempDir dir("cli-config");
  WriteText(dir / "run.ini", "[cost]\nposts=1000\nbatch-size=10\n");
  auto r = Cli({"--config", (dir / "run.ini").string(), "cost"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err << r.out;
  EXPECT_NE(r.out.find("1,000 posts in 100 batches of 10"), std::string::npos) << r.out;
  r = Cli({"--config", (dir / "run.ini").string(), "cost", "--batch-size", "50"});
  EXPECT_NE(r.out.find("in 20 batches of 50"), std::string::npos) << r.out;
}

TEST(Cli, ShippedConfigDrivesSessions) {
  TempDir dir("cli-shipped-config");
  WriteText(dir / "posts.jsonl", SyntheticJsonl(50));
  auto r = Cli({"--config", ANNOTKIT_SOURCE_DIR "/configs/mock-run.ini", "sessions", "--corpus",
                (dir / "posts.jsonl").string(), "-o", (dir / "s").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("threshold 14d"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("threshold 6h"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace annotkit
