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

#include "annotkit/temporal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "annotkit/csv.hpp"
#include "annotkit/errors.hpp"

namespace annotkit {

using std::chrono::days;
using std::chrono::hours;

namespace {
constexpr double kYearSeconds = 365.25 * 86400.0;
}  // namespace

const std::vector<NamedThreshold>& StandardThresholds() {
  static const std::vector<NamedThreshold> thresholds = {
      {"1h", hours(1)},  {"6h", hours(6)},   {"12h", hours(12)},
      {"24h", hours(24)}, {"14d", days(14)}, {"180d", days(180)},
  };
  return thresholds;
}

Duration ParseDuration(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr == s.data()) {
    throw ParseError(fmt::format("bad duration '{}'", text));
  }
  if (value < 0) throw ParseError(fmt::format("negative duration '{}'", text));
  std::string_view unit(ptr, s.data() + s.size() - ptr);
  std::int64_t scale;
  if (unit.empty() || unit == "s") {
    scale = 1;
  } else if (unit == "m" || unit == "min") {
    scale = 60;
  } else if (unit == "h") {
    scale = 3600;
  } else if (unit == "d") {
    scale = 86400;
  } else if (unit == "w") {
    scale = 7 * 86400;
  } else {
    throw ParseError(fmt::format("bad duration unit in '{}'", text));
  }
  return Duration(value * scale);
}

std::string FormatDuration(Duration d) {
  const auto s = d.count();
  if (s != 0 && s % 86400 == 0 && s >= 2 * 86400) return fmt::format("{}d", s / 86400);
  if (s != 0 && s % 3600 == 0) return fmt::format("{}h", s / 3600);
  if (s != 0 && s % 60 == 0) return fmt::format("{}m", s / 60);
  return fmt::format("{}s", s);
}

void SessionConfig::Validate() const {
  if (inactivity_threshold <= Duration::zero()) {
    throw InvalidArgument("inactivity threshold must be positive");
  }
  if (bin_width && *bin_width <= Duration::zero()) {
    throw InvalidArgument("bin width must be positive");
  }
}

std::vector<Session> Segment(const UserTimeline& timeline, Duration threshold) {
  if (timeline.posts.empty()) throw InvalidArgument("cannot segment an empty timeline");
  if (threshold <= Duration::zero()) throw InvalidArgument("threshold must be positive");
  std::vector<Session> sessions;
  for (const Post& p : timeline.posts) {
    if (sessions.empty() || p.created_at - sessions.back().end >= threshold) {
      sessions.push_back({timeline.user_id, {}, p.created_at, p.created_at});
    }
    Session& s = sessions.back();
    s.posts.push_back(p);
    s.end = p.created_at;
  }
  return sessions;
}

SegmentationSummary SummarizeSegmentation(const Corpus& corpus, Duration threshold) {
  SegmentationSummary out;
  out.threshold = threshold;
  if (corpus.empty()) return out;
  Instant corpus_end = corpus.posts().front().created_at;
  for (const Post& p : corpus.posts()) corpus_end = std::max(corpus_end, p.created_at);
  std::size_t posts = 0;
  double seconds = 0;
  for (const auto& tl : AllTimelines(corpus)) {
    ++out.users;
    const auto sessions = Segment(tl, threshold);
    out.sessions += sessions.size();
    for (const auto& s : sessions) {
      posts += s.posts.size();
      seconds += static_cast<double>((s.end - s.start).count());
    }
    if (corpus_end - sessions.back().end < threshold) ++out.right_censored_users;
  }
  out.mean_posts_per_session = static_cast<double>(posts) / static_cast<double>(out.sessions);
  out.mean_session_seconds = seconds / static_cast<double>(out.sessions);
  return out;
}

std::string_view ScopeName(Scope s) {
  switch (s) {
    case Scope::kForumCalendar: return "forum";
    case Scope::kUserRelative: return "user";
    case Scope::kPostInactivity: return "window";
  }
  return "?";
}

Scope ParseScope(std::string_view name) {
  if (name == "forum" || name == "forum-calendar") return Scope::kForumCalendar;
  if (name == "user" || name == "user-relative") return Scope::kUserRelative;
  if (name == "window" || name == "post-inactivity") return Scope::kPostInactivity;
  throw InvalidArgument(fmt::format("unknown scope '{}' (forum|user|window)", name));
}

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kCombined: return "combined";
    case Category::kExplicit: return "explicit";
    case Category::kImplicit: return "implicit";
    case Category::kNonViolent: return "non-violent";
    case Category::kDirected: return "directed";
    case Category::kGeneral: return "general";
    case Category::kSelfDirected: return "self-directed";
  }
  return "?";
}

Category ParseCategory(std::string_view name) {
  for (Category c : {Category::kCombined, Category::kExplicit, Category::kImplicit,
                     Category::kNonViolent, Category::kDirected, Category::kGeneral,
                     Category::kSelfDirected}) {
    if (CategoryName(c) == name) return c;
  }
  throw InvalidArgument(fmt::format("unknown category '{}'", name));
}

bool InCategory(Label label, Category c) {
  switch (c) {
    case Category::kCombined: return label.violent();
    case Category::kExplicit: return label.violence() == ViolenceClass::kExplicit;
    case Category::kImplicit: return label.violence() == ViolenceClass::kImplicit;
    case Category::kNonViolent: return !label.violent();
    case Category::kDirected: return label.direction() == Directedness::kDirected;
    case Category::kGeneral: return label.direction() == Directedness::kGeneral;
    case Category::kSelfDirected: return label.direction() == Directedness::kSelfDirected;
  }
  return false;
}

LabelLookup MakeLabelLookup(std::span<const Annotation> annotations) {
  LabelLookup out;
  out.reserve(annotations.size());
  for (const auto& a : annotations) out.emplace(a.post_id, a.label);
  return out;
}

namespace {

struct Observation {
  double elapsed;  // seconds since the scope origin
  Label label;
};

struct ScopedObservations {
  std::vector<Observation> points;
  double span_seconds = 0;
  double unit_seconds = 1;
  std::string unit;
  std::size_t windows = 0;
};

// Annotated posts of one user, time-ordered.
std::vector<std::pair<Instant, Label>> AnnotatedTimeline(const UserTimeline& tl,
                                                         const LabelLookup& labels) {
  std::vector<std::pair<Instant, Label>> out;
  for (const Post& p : tl.posts) {
    if (auto it = labels.find(p.post_id); it != labels.end()) out.emplace_back(p.created_at, it->second);
  }
  return out;
}

ScopedObservations Collect(const Corpus& corpus, const LabelLookup& labels,
                           const SeriesOptions& options) {
  ScopedObservations obs;
  switch (options.scope) {
    case Scope::kForumCalendar: {
      std::vector<std::pair<Instant, Label>> all;
      for (const Post& p : corpus.posts()) {
        if (auto it = labels.find(p.post_id); it != labels.end()) all.emplace_back(p.created_at, it->second);
      }
      if (all.empty()) break;
      Instant origin = all.front().first;
      for (const auto& [t, _] : all) origin = std::min(origin, t);
      for (const auto& [t, label] : all) {
        obs.points.push_back({static_cast<double>((t - origin).count()), label});
      }
      obs.unit_seconds = kYearSeconds;
      obs.unit = "year";
      break;
    }
    case Scope::kUserRelative: {
      for (const auto& tl : AllTimelines(corpus)) {
        const auto posts = AnnotatedTimeline(tl, labels);
        if (posts.empty()) continue;
        const Instant origin = posts.front().first;
        for (const auto& [t, label] : posts) {
          obs.points.push_back({static_cast<double>((t - origin).count()), label});
        }
      }
      obs.unit_seconds = kYearSeconds;
      obs.unit = "year";
      break;
    }
    case Scope::kPostInactivity: {
      if (options.threshold <= Duration::zero()) {
        throw InvalidArgument("window scope needs a positive threshold");
      }
      for (const auto& tl : AllTimelines(corpus)) {
        const auto posts = AnnotatedTimeline(tl, labels);
        for (std::size_t i = 1; i < posts.size(); ++i) {
          if (posts[i].first - posts[i - 1].first < options.threshold) continue;
          ++obs.windows;
          const Instant origin = posts[i].first;
          for (std::size_t j = i; j < posts.size() && posts[j].first - origin < options.threshold; ++j) {
            obs.points.push_back({static_cast<double>((posts[j].first - origin).count()), posts[j].second});
          }
        }
      }
      obs.span_seconds = static_cast<double>(options.threshold.count());
      obs.unit_seconds = obs.span_seconds;
      obs.unit = fmt::format("window ({})", FormatDuration(options.threshold));
      break;
    }
  }
  if (options.scope != Scope::kPostInactivity) {
    for (const auto& o : obs.points) obs.span_seconds = std::max(obs.span_seconds, o.elapsed);
  }
  return obs;
}

std::vector<BinnedSeries> BinAll(const ScopedObservations& obs, const SeriesOptions& options,
                                 std::span<const Category> categories) {
  if (obs.points.empty()) {
    throw InvalidArgument(fmt::format("no annotated posts in {} scope", ScopeName(options.scope)));
  }
  double width;
  if (options.bin_width) {
    width = static_cast<double>(options.bin_width->count());
    if (!(width > 0)) throw InvalidArgument("bin width must be positive");
  } else {
    width = obs.span_seconds > 0 ? obs.span_seconds / static_cast<double>(options.default_bins) : 1.0;
  }
  // Default binning folds the end point into the last bin.
  const bool fold_last = !options.bin_width;
  const auto last_bin = static_cast<std::int64_t>(options.default_bins) - 1;

  std::map<std::int64_t, std::pair<std::size_t, std::vector<std::size_t>>> bins;
  for (const auto& o : obs.points) {
    auto idx = static_cast<std::int64_t>(std::floor(o.elapsed / width));
    if (fold_last) idx = std::min(idx, last_bin);
    auto& [n, hits] = bins[idx];
    hits.resize(categories.size(), 0);
    ++n;
    for (std::size_t c = 0; c < categories.size(); ++c) {
      if (InCategory(o.label, categories[c])) ++hits[c];
    }
  }
  std::vector<BinnedSeries> out;
  for (std::size_t c = 0; c < categories.size(); ++c) {
    BinnedSeries s;
    s.scope = options.scope;
    s.category = categories[c];
    s.bin_width_seconds = width;
    s.time_unit_seconds = obs.unit_seconds;
    s.time_unit = obs.unit;
    s.windows = obs.windows;
    for (const auto& [idx, entry] : bins) {
      const auto& [n, hits] = entry;
      s.bins.push_back({static_cast<double>(idx) * width,
                        static_cast<double>(hits[c]) / static_cast<double>(n), n});
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

BinnedSeries ViolentShareSeries(const Corpus& corpus, const LabelLookup& labels,
                                const SeriesOptions& options, Category category) {
  const Category cats[] = {category};
  return BinAll(Collect(corpus, labels, options), options, cats).front();
}

std::vector<BinnedSeries> DirectednessSeries(const Corpus& corpus, const LabelLookup& labels,
                                             const SeriesOptions& options) {
  const Category cats[] = {Category::kDirected, Category::kGeneral, Category::kSelfDirected};
  return BinAll(Collect(corpus, labels, options), options, cats);
}

std::string SeriesCsv(const BinnedSeries& series) {
  std::string out = "bin_start,share,n\n";
  for (const Bin& b : series.bins) {
    out += fmt::format("{},{},{}\n", b.start_seconds, b.share, b.n_posts);
  }
  return out;
}

BinnedSeries ParseSeriesCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header || header->size() < 3 || (*header)[0] != "bin_start" || (*header)[1] != "share" ||
      (*header)[2] != "n") {
    throw ParseError("series CSV must start with 'bin_start,share,n'");
  }
  BinnedSeries s;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() < 3) throw ParseError(fmt::format("series CSV line {}: too few columns", reader.line()));
    try {
      s.bins.push_back({std::stod((*row)[0]), std::stod((*row)[1]),
                        static_cast<std::size_t>(std::stoull((*row)[2]))});
    } catch (const std::exception&) {
      throw ParseError(fmt::format("series CSV line {}: not a number", reader.line()));
    }
  }
  return s;
}

EngagementStats EngagementFromCounts(std::span<const std::size_t> posts_per_user) {
  if (posts_per_user.empty()) throw InvalidArgument("engagement of an empty corpus");
  std::vector<std::size_t> counts(posts_per_user.begin(), posts_per_user.end());
  std::sort(counts.begin(), counts.end());
  EngagementStats s;
  s.users = counts.size();
  std::size_t singles = 0;
  for (std::size_t c : counts) {
    s.posts += c;
    if (c == 1) ++singles;
  }
  s.mean_posts = static_cast<double>(s.posts) / static_cast<double>(s.users);
  const std::size_t mid = s.users / 2;
  s.median_posts = s.users % 2 ? static_cast<double>(counts[mid])
                               : (static_cast<double>(counts[mid - 1]) + counts[mid]) / 2.0;
  s.single_post_share = static_cast<double>(singles) / static_cast<double>(s.users);
  const auto rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(s.users)));
  s.p90_posts = counts[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

EngagementStats ComputeEngagement(const Corpus& corpus, std::span<const Duration> durations) {
  if (corpus.empty()) throw InvalidArgument("engagement of an empty corpus");
  std::vector<std::size_t> counts;
  std::vector<Duration> spans;
  for (const auto& [user, idx] : corpus.user_index()) {
    counts.push_back(idx.size());
    Instant first = corpus.posts()[idx.front()].created_at, last = first;
    for (std::size_t i : idx) {
      first = std::min(first, corpus.posts()[i].created_at);
      last = std::max(last, corpus.posts()[i].created_at);
    }
    spans.push_back(last - first);
  }
  EngagementStats s = EngagementFromCounts(counts);
  const std::vector<Duration> defaults = {days(1), days(30), days(365)};
  for (Duration d : durations.empty() ? std::span<const Duration>(defaults) : durations) {
    const auto n = std::count_if(spans.begin(), spans.end(), [d](Duration x) { return x >= d; });
    s.active_at_least.emplace_back(d, static_cast<double>(n) / static_cast<double>(s.users));
  }
  return s;
}

std::string RenderEngagement(const EngagementStats& s) {
  std::string out = fmt::format(
      "{} users, {} posts. Posts per user: mean {:.0f}, median {:g}. "
      "{:.1f}% of users posted once; the top 10% posted at least {} times.",
      s.users, s.posts, s.mean_posts, s.median_posts, s.single_post_share * 100, s.p90_posts);
  for (const auto& [d, share] : s.active_at_least) {
    out += fmt::format(" Active for at least {}: {:.1f}%.", FormatDuration(d), share * 100);
  }
  return out;
}

}  // namespace annotkit
