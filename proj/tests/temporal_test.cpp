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

#include <random>

#include <gtest/gtest.h>

#include "annotkit/errors.hpp"
#include "annotkit/ols.hpp"
#include "annotkit/temporal.hpp"
#include "test_support.hpp"

namespace annotkit {
namespace {

using std::chrono::hours;
using std::chrono::seconds;
using testing::MakePost;

UserTimeline TimelineAt(std::vector<long long> times) {
  UserTimeline t;
  t.user_id = "u";
  for (std::size_t i = 0; i < times.size(); ++i) t.posts.push_back(MakePost("p" + std::to_string(i), "u", times[i]));
  return t;
}

TEST(Duration, ParseAndFormat) {
  EXPECT_EQ(ParseDuration("1h"), hours(1));
  EXPECT_EQ(ParseDuration("14d"), hours(24 * 14));
  EXPECT_EQ(ParseDuration("90"), seconds(90));
  EXPECT_EQ(ParseDuration("30min"), seconds(1800));
  EXPECT_EQ(ParseDuration("2w"), hours(24 * 14));
  EXPECT_THROW(ParseDuration("h"), Error);
  EXPECT_THROW(ParseDuration("-1h"), Error);
  EXPECT_EQ(FormatDuration(hours(24 * 180)), "180d");
  EXPECT_EQ(FormatDuration(hours(6)), "6h");
  ASSERT_EQ(StandardThresholds().size(), 6u);
  EXPECT_EQ(StandardThresholds().back().value, hours(24 * 180));
}

TEST(Segment, Examples) {
  EXPECT_EQ(Segment(TimelineAt({5}), hours(1)).size(), 1u);
  const auto s = Segment(TimelineAt({0, 1800, 7200}), hours(1));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].posts.size(), 2u);
  EXPECT_EQ(s[1].posts.size(), 1u);
  EXPECT_EQ(s[0].end.time_since_epoch().count(), 1800);
  // A gap of exactly the threshold opens a new session.
  EXPECT_EQ(Segment(TimelineAt({0, 3600}), hours(1)).size(), 2u);
  EXPECT_EQ(Segment(TimelineAt({0, 3599}), hours(1)).size(), 1u);
  EXPECT_THROW(Segment(TimelineAt({}), hours(1)), Error);
}

TEST(Segment, MatchesGapScanAndCoarsensMonotonically) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<long long> times(1 + rng() % 30);
    for (auto& t : times) t = static_cast<long long>(rng() % (3600LL * 24 * 400));
    std::sort(times.begin(), times.end());
    const auto tl = TimelineAt(times);
    std::size_t previous = SIZE_MAX;
    for (const auto& th : StandardThresholds()) {
      const auto sessions = Segment(tl, th.value);
      ASSERT_EQ(sessions.size(), testing::BruteForceSessions(times, th.value.count()));
      std::size_t posts = 0;
      for (const auto& s : sessions) posts += s.posts.size();
      ASSERT_EQ(posts, times.size());
      ASSERT_LE(sessions.size(), previous);
      previous = sessions.size();
    }
  }
}

TEST(Segment, SummaryCountsCensoredUsers) {
  Corpus c;
  c.Add(MakePost("a1", "a", 0));
  c.Add(MakePost("a2", "a", 100));
  c.Add(MakePost("b1", "b", 10000));
  const auto s = SummarizeSegmentation(c, hours(1));
  EXPECT_EQ(s.users, 2u);
  EXPECT_EQ(s.sessions, 2u);
  EXPECT_DOUBLE_EQ(s.mean_posts_per_session, 1.5);
  EXPECT_EQ(s.right_censored_users, 1u);
}

// Ten bins of nine posts; bin k has k violent posts.
struct Ramp {
  Corpus corpus;
  LabelLookup labels;
};

Ramp MakeRamp(Label violent_label = LabelFromCode("EV-D")) {
  Ramp r;
  for (int k = 0; k < 10; ++k) {
    for (int j = 0; j < 9; ++j) {
      const std::string id = "k" + std::to_string(k) + "j" + std::to_string(j);
      r.corpus.Add(MakePost(id, "u" + std::to_string(j), 1'000'000 + k * 1000 + j * 10));
      r.labels[id] = j < k ? violent_label : Label();
    }
  }
  return r;
}

TEST(Series, RampGivesExactShares) {
  const Ramp r = MakeRamp();
  SeriesOptions o;
  o.bin_width = seconds(1000);
  const auto s = ViolentShareSeries(r.corpus, r.labels, o, Category::kCombined);
  ASSERT_EQ(s.bins.size(), 10u);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(s.bins[k].share, k / 9.0, 1e-12);
    EXPECT_EQ(s.bins[k].n_posts, 9u);
    EXPECT_DOUBLE_EQ(s.bins[k].start_seconds, k * 1000.0);
  }
  EXPECT_EQ(s.time_unit, "year");
}

TEST(Series, AllNonViolentIsZero) {
  Ramp r = MakeRamp();
  for (auto& [id, label] : r.labels) label = Label();
  SeriesOptions o;
  for (const auto& s : DirectednessSeries(r.corpus, r.labels, o)) {
    for (const auto& b : s.bins) EXPECT_EQ(b.share, 0);
  }
  for (const auto& b : ViolentShareSeries(r.corpus, r.labels, o, Category::kCombined).bins) EXPECT_EQ(b.share, 0);
}

TEST(Series, SelfDirectedOnlyEqualsCombined) {
  const Ramp r = MakeRamp(LabelFromCode("EV-S"));
  SeriesOptions o;
  o.scope = Scope::kUserRelative;
  const auto combined = ViolentShareSeries(r.corpus, r.labels, o, Category::kCombined);
  const auto dirs = DirectednessSeries(r.corpus, r.labels, o);
  ASSERT_EQ(dirs.size(), 3u);
  ASSERT_EQ(dirs[2].category, Category::kSelfDirected);
  ASSERT_EQ(dirs[2].bins.size(), combined.bins.size());
  for (std::size_t i = 0; i < combined.bins.size(); ++i) {
    EXPECT_DOUBLE_EQ(dirs[2].bins[i].share, combined.bins[i].share);
    EXPECT_EQ(dirs[0].bins[i].share, 0);
  }
}

TEST(Series, WindowScopeStartsAfterInactivity) {
  Corpus c;
  LabelLookup labels;
  auto add = [&](const std::string& id, long long t, bool violent) {
    c.Add(MakePost(id, "u", t));
    labels[id] = violent ? LabelFromCode("IV-G") : Label();
  };
  add("a", 0, false);
  add("b", 100, false);        // no gap >= 1h before it
  add("c", 10'000, true);      // window origin
  add("d", 10'000 + 1800, true);
  add("e", 10'000 + 3600, false);  // outside [origin, origin + 1h)
  SeriesOptions o;
  o.scope = Scope::kPostInactivity;
  o.threshold = hours(1);
  o.bin_width = seconds(900);
  const auto s = ViolentShareSeries(c, labels, o, Category::kCombined);
  EXPECT_EQ(s.windows, 1u);
  EXPECT_DOUBLE_EQ(s.time_unit_seconds, 3600);
  ASSERT_FALSE(s.bins.empty());
  EXPECT_DOUBLE_EQ(s.bins.front().start_seconds, 0);
  std::size_t n = 0;
  for (const auto& b : s.bins) n += b.n_posts;
  EXPECT_EQ(n, 2u);
}

TEST(Series, CsvRoundTrip) {
  const Ramp r = MakeRamp();
  SeriesOptions o;
  o.bin_width = seconds(1000);
  const auto s = ViolentShareSeries(r.corpus, r.labels, o, Category::kCombined);
  const auto back = ParseSeriesCsv(SeriesCsv(s));
  ASSERT_EQ(back.bins.size(), s.bins.size());
  for (std::size_t i = 0; i < s.bins.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.bins[i].share, s.bins[i].share);
    EXPECT_EQ(back.bins[i].n_posts, s.bins[i].n_posts);
  }
  EXPECT_THROW(ParseSeriesCsv("a,b\n1,2\n"), Error);
}

TEST(Ols, HandExampleAndPerfectLine) {
  const std::vector<double> x = {0, 1, 2, 3}, y = {0, 1, 0, 1};
  const auto f = FitLine(x, y);
  EXPECT_NEAR(f.slope, 0.2, 1e-12);
  EXPECT_NEAR(f.intercept, 0.2, 1e-12);
  const std::vector<double> line = {0, 1, 2, 3};
  const auto p = FitLine(line, line);
  EXPECT_NEAR(p.slope, 1.0, 1e-12);
  EXPECT_LT(p.p_value, 1e-12);
  EXPECT_EQ(Stars(p.p_value), "***");
  EXPECT_THROW(FitLine(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(FitLine(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), Error);
}

TEST(Ols, MatchesClosedFormAndSimpson) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 60);
    std::vector<double> x(n), y(n);
    const double slope = noise(rng) * 0.3;
    for (int i = 0; i < n; ++i) {
      x[i] = i + 0.5 * noise(rng);
      y[i] = slope * x[i] + noise(rng);
    }
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
      mx += x[i] / n;
      my += y[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (int i = 0; i < n; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    const auto f = FitLine(x, y);
    ASSERT_NEAR(f.slope, sxy / sxx, 1e-9);
    ASSERT_NEAR(f.intercept, my - sxy / sxx * mx, 1e-9);
    ASSERT_NEAR(f.p_value, testing::SimpsonTwoSidedP(f.t_stat, n - 2), 1e-6);
  }
}

TEST(Ols, WeightedEqualsReplicatedPoints) {
  // Integer weights behave like repeating each point.
  const std::vector<double> x = {0, 1, 2, 3, 4}, y = {0.1, 0.4, 0.3, 0.8, 0.7}, w = {1, 3, 2, 1, 2};
  std::vector<double> rx, ry;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int k = 0; k < static_cast<int>(w[i]); ++k) {
      rx.push_back(x[i]);
      ry.push_back(y[i]);
    }
  }
  EXPECT_NEAR(FitLine(x, y, w).slope, FitLine(rx, ry).slope, 1e-12);
}

TEST(Ols, StarBoundaries) {
  EXPECT_EQ(Stars(0.001 - 1e-12), "***");
  EXPECT_EQ(Stars(0.001), "**");
  EXPECT_EQ(Stars(0.001 + 1e-12), "**");
  EXPECT_EQ(Stars(0.01 - 1e-12), "**");
  EXPECT_EQ(Stars(0.01), "*");
  EXPECT_EQ(Stars(0.05 - 1e-12), "*");
  EXPECT_EQ(Stars(0.05), "");
  EXPECT_EQ(Stars(0.05 + 1e-12), "");
  EXPECT_EQ(Stars(1.0), "");
}

TEST(Ols, SeriesFitUsesTimeUnit) {
  BinnedSeries s;
  s.time_unit_seconds = 10;
  s.time_unit = "tick";
  for (int i = 0; i < 5; ++i) s.bins.push_back({i * 10.0, i * 0.1, 4});
  const auto r = OlsFit(s);
  EXPECT_NEAR(r.beta, 0.1, 1e-12);
  EXPECT_NEAR(r.beta_per_second, 0.01, 1e-12);
  EXPECT_EQ(r.time_unit, "tick");
  EXPECT_EQ(r.stars, "***");
  RegressionResult fixture;
  fixture.beta = 0.07;
  fixture.stars = "***";
  EXPECT_EQ(FormatBeta(fixture), "0.07***");
}

TEST(Engagement, SmallExamples) {
  const std::vector<std::size_t> counts = {1, 24, 50};
  const auto s = EngagementFromCounts(counts);
  EXPECT_DOUBLE_EQ(s.mean_posts, 25);
  EXPECT_DOUBLE_EQ(s.median_posts, 24);
  EXPECT_NEAR(s.single_post_share, 1.0 / 3, 1e-12);
  const std::vector<std::size_t> one = {7};
  const auto u = EngagementFromCounts(one);
  EXPECT_DOUBLE_EQ(u.mean_posts, 7);
  EXPECT_DOUBLE_EQ(u.median_posts, 7);
  EXPECT_EQ(u.p90_posts, 7u);
}

TEST(Engagement, FromCorpusWithActivitySpans) {
  Corpus c;
  c.Add(MakePost("1", "a", 0));
  c.Add(MakePost("2", "a", 3 * 86400));
  c.Add(MakePost("3", "b", 0));
  const std::vector<Duration> spans = {hours(24)};
  const auto s = ComputeEngagement(c, spans);
  EXPECT_EQ(s.users, 2u);
  EXPECT_EQ(s.posts, 3u);
  ASSERT_EQ(s.active_at_least.size(), 1u);
  EXPECT_DOUBLE_EQ(s.active_at_least[0].second, 0.5);
}

}  // namespace
}  // namespace annotkit
