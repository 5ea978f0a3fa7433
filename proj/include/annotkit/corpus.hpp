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

#ifndef ANNOTKIT_CORPUS_HPP_
#define ANNOTKIT_CORPUS_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace annotkit {

using Instant = std::chrono::sys_seconds;

struct Post {
  std::string post_id;
  std::string user_id;  // anonymized deleted users are ordinary ids
  std::string thread_id;
  Instant created_at{};
  std::string text;

  friend bool operator==(const Post&, const Post&) = default;
};

// A user's posts ordered by (created_at, post_id).
struct UserTimeline {
  std::string user_id;
  std::vector<Post> posts;
};

// Keyed post store with a per-user index. Built by a single writer, then
// read-only; concurrent readers need no synchronization.
class Corpus {
 public:
  // Returns false (and stores nothing) if post_id is already present.
  bool Add(Post post);

  std::size_t size() const { return posts_.size(); }
  bool empty() const { return posts_.empty(); }

  // Insertion order.
  const std::vector<Post>& posts() const { return posts_; }

  const Post* Find(std::string_view post_id) const;
  bool HasUser(std::string_view user_id) const;

  // user_id -> indices into posts(), in insertion order. Ordered by user_id.
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& user_index() const {
    return by_user_;
  }

 private:
  std::vector<Post> posts_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_user_;
};

enum class InputFormat { kJsonl, kCsv };

// Picks kCsv for ".csv" and kJsonl otherwise.
InputFormat FormatFromPath(const std::filesystem::path& path);

struct IngestResult {
  Corpus corpus;
  std::size_t records_seen = 0;
  std::size_t skipped_missing_field = 0;
  std::size_t skipped_bad_timestamp = 0;
  std::size_t skipped_malformed = 0;
  std::size_t duplicates = 0;
  std::vector<std::string> warnings;

  std::size_t skipped() const {
    return skipped_missing_field + skipped_bad_timestamp + skipped_malformed;
  }
};

// Reads JSONL or CSV records (post_id, user_id, thread_id, created_at, text).
// Bad records are skipped and counted; duplicates keep the first occurrence.
// Throws Error(kIo) if the file cannot be opened.
IngestResult Ingest(const std::filesystem::path& path, InputFormat format);
IngestResult IngestStream(std::istream& in, InputFormat format);

// Line-break normalization applied to every ingested text: CRLF and CR
// become LF, then each run of two or more LFs collapses to one.
std::string Preprocess(std::string_view text);

// Integer epoch seconds or an RFC 3339 timestamp ("2021-03-04T05:06:07Z",
// optional fraction and numeric offset). Throws Error(kParse).
Instant ParseTimestamp(std::string_view text);
std::string FormatTimestamp(Instant t);  // RFC 3339, UTC, 'Z'

void ExportJsonl(const Corpus& corpus, std::ostream& out);
void ExportJsonl(const Corpus& corpus, const std::filesystem::path& path);

// Uniform sample without replacement; identical output for a fixed seed on
// every platform. Throws Error(kInvalidArgument) if n > corpus.size().
std::vector<Post> Sample(const Corpus& corpus, std::size_t n, std::uint64_t seed);

// Throws Error(kInvalidArgument) for an unknown user.
UserTimeline Timeline(const Corpus& corpus, std::string_view user_id);

std::vector<UserTimeline> AllTimelines(const Corpus& corpus);

}  // namespace annotkit

#endif  // ANNOTKIT_CORPUS_HPP_
