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

#ifndef ANNOTKIT_TEMPORAL_HPP_
#define ANNOTKIT_TEMPORAL_HPP_

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "annotkit/corpus.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

using Duration = std::chrono::seconds;

struct NamedThreshold {
  std::string name;
  Duration value;
};

// 1h, 6h, 12h, 24h, 14d, 180d.
const std::vector<NamedThreshold>& StandardThresholds();

// "90s", "30m", "1h", "14d", "2w" or plain seconds. Throws Error(kParse).
Duration ParseDuration(std::string_view text);
std::string FormatDuration(Duration d);

struct SessionConfig {
  Duration inactivity_threshold{std::chrono::hours(1)};
  std::optional<Duration> bin_width;  // default: 1/50 of the scope's span

  void Validate() const;
};

struct Session {
  std::string user_id;
  std::vector<Post> posts;
  Instant start{};
  Instant end{};
};

// Splits a timeline wherever consecutive posts are `threshold` or more
// apart; a gap of exactly the threshold opens a new session. Throws
// Error(kInvalidArgument) for an empty timeline or a non-positive threshold.
std::vector<Session> Segment(const UserTimeline& timeline, Duration threshold);

struct SegmentationSummary {
  Duration threshold{};
  std::size_t users = 0;
  std::size_t sessions = 0;
  double mean_posts_per_session = 0;
  double mean_session_seconds = 0;
  // Users whose last post is within one threshold of the corpus end: their
  // final session may continue past the archive.
  std::size_t right_censored_users = 0;
};

SegmentationSummary SummarizeSegmentation(const Corpus& corpus, Duration threshold);

enum class Scope {
  kForumCalendar,   // origin = forum's first annotated post
  kUserRelative,    // origin = each user's first annotated post, pooled
  kPostInactivity,  // windows of one threshold after >= threshold of silence
};

enum class Category {
  kCombined,
  kExplicit,
  kImplicit,
  kNonViolent,
  kDirected,
  kGeneral,
  kSelfDirected,
};

std::string_view ScopeName(Scope s);  // "forum", "user", "window"
Scope ParseScope(std::string_view name);
std::string_view CategoryName(Category c);  // "combined", "explicit", ...
Category ParseCategory(std::string_view name);
bool InCategory(Label label, Category c);

struct Bin {
  double start_seconds = 0;  // elapsed since the series origin
  double share = 0;
  std::size_t n_posts = 0;
};

struct BinnedSeries {
  Scope scope = Scope::kForumCalendar;
  Category category = Category::kCombined;
  std::vector<Bin> bins;  // ascending; empty bins omitted
  double bin_width_seconds = 0;
  // Regression time unit: a year for forum/user scopes, the window length
  // for post-inactivity windows.
  double time_unit_seconds = 1;
  std::string time_unit = "second";
  std::size_t windows = 0;  // post-inactivity windows found
};

struct SeriesOptions {
  Scope scope = Scope::kForumCalendar;
  Duration threshold{std::chrono::hours(24)};  // window scope only
  std::optional<Duration> bin_width;
  std::size_t default_bins = 50;
};

using LabelLookup = std::unordered_map<std::string, Label>;
LabelLookup MakeLabelLookup(std::span<const Annotation> annotations);

// Share of annotated posts in `category` per time bin. Unannotated posts are
// ignored. Throws Error(kInvalidArgument) if the scope holds no annotated
// post.
BinnedSeries ViolentShareSeries(const Corpus& corpus, const LabelLookup& labels,
                                const SeriesOptions& options, Category category);

// Directed, general and self-directed series; shares are over all posts, so
// the three add up to the combined violent share per bin.
std::vector<BinnedSeries> DirectednessSeries(const Corpus& corpus, const LabelLookup& labels,
                                             const SeriesOptions& options);

// "bin_start,share,n" rows.
std::string SeriesCsv(const BinnedSeries& series);

// Reads SeriesCsv output back (time unit defaults to seconds).
BinnedSeries ParseSeriesCsv(std::string_view csv);

struct EngagementStats {
  std::size_t users = 0;
  std::size_t posts = 0;
  double mean_posts = 0;
  double median_posts = 0;
  double single_post_share = 0;
  std::size_t p90_posts = 0;  // nearest rank
  std::vector<std::pair<Duration, double>> active_at_least;  // share of users
};

// Throws Error(kInvalidArgument) for an empty corpus.
EngagementStats ComputeEngagement(const Corpus& corpus, std::span<const Duration> durations = {});
EngagementStats EngagementFromCounts(std::span<const std::size_t> posts_per_user);

std::string RenderEngagement(const EngagementStats& stats);

}  // namespace annotkit

#endif  // ANNOTKIT_TEMPORAL_HPP_
