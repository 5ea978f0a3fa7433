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

#include "annotkit/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/csv.hpp"
#include "annotkit/errors.hpp"
#include "annotkit/random.hpp"

namespace annotkit {

using nlohmann::json;

bool Corpus::Add(Post post) {
  if (by_id_.contains(post.post_id)) return false;
  const std::size_t index = posts_.size();
  by_id_.emplace(post.post_id, index);
  by_user_[post.user_id].push_back(index);
  posts_.push_back(std::move(post));
  return true;
}

const Post* Corpus::Find(std::string_view post_id) const {
  auto it = by_id_.find(std::string(post_id));
  return it == by_id_.end() ? nullptr : &posts_[it->second];
}

bool Corpus::HasUser(std::string_view user_id) const {
  return by_user_.find(user_id) != by_user_.end();
}

InputFormat FormatFromPath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? InputFormat::kCsv : InputFormat::kJsonl;
}

std::string Preprocess(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      c = '\n';
    }
    if (c == '\n' && !out.empty() && out.back() == '\n') continue;
    out.push_back(c);
  }
  return out;
}

namespace {

std::optional<int> Digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

std::optional<Instant> ParseRfc3339(std::string_view s) {
  using namespace std::chrono;
  auto year = Digits(s, 0, 4), month = Digits(s, 5, 2), day = Digits(s, 8, 2);
  auto hour = Digits(s, 11, 2), minute = Digits(s, 14, 2), second = Digits(s, 17, 2);
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || s[13] != ':' || s[16] != ':') return std::nullopt;
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  if (*hour > 23 || *minute > 59 || *second > 60) return std::nullopt;
  year_month_day ymd{std::chrono::year(*year), std::chrono::month(static_cast<unsigned>(*month)),
                     std::chrono::day(static_cast<unsigned>(*day))};
  if (!ymd.ok()) return std::nullopt;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;  // fraction truncated to seconds
  }
  if (pos >= s.size()) return std::nullopt;
  seconds offset{0};
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    auto oh = Digits(s, pos + 1, 2), om = Digits(s, pos + 4, 2);
    if (!oh || !om || s[pos + 3] != ':' || *oh > 23 || *om > 59) return std::nullopt;
    offset = hours(*oh) + minutes(*om);
    if (s[pos] == '-') offset = -offset;
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  return sys_days(ymd) + hours(*hour) + minutes(*minute) + seconds(*second) - offset;
}

}  // namespace

Instant ParseTimestamp(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty timestamp");
  std::int64_t epoch = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), epoch);
  if (ec == std::errc() && ptr == s.data() + s.size()) {
    return Instant(std::chrono::seconds(epoch));
  }
  if (auto t = ParseRfc3339(s)) return *t;
  throw ParseError(fmt::format("unparseable timestamp '{}'", s));
}

std::string FormatTimestamp(Instant t) {
  using namespace std::chrono;
  const sys_days day = floor<days>(t);
  const year_month_day ymd(day);
  const hh_mm_ss hms(t - day);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

namespace {

struct RawRecord {
  std::optional<std::string> post_id, user_id, thread_id, created_at, text;
};


void Accept(IngestResult& result, const RawRecord& raw, std::size_t line) {
  auto non_empty = [](const std::optional<std::string>& v) { return v && !v->empty(); };
  if (!non_empty(raw.post_id) || !non_empty(raw.user_id) || !non_empty(raw.thread_id) ||
      !non_empty(raw.created_at) || !raw.text) {
    ++result.skipped_missing_field;
    result.warnings.push_back(fmt::format("line {}: missing required field", line));
    return;
  }
  Post post;
  try {
    post.created_at = ParseTimestamp(*raw.created_at);
  } catch (const Error& e) {
    ++result.skipped_bad_timestamp;
    result.warnings.push_back(fmt::format("line {}: {}", line, e.what()));
    return;
  }
  post.post_id = *raw.post_id;
  post.user_id = *raw.user_id;
  post.thread_id = *raw.thread_id;
  post.text = Preprocess(*raw.text);
  if (!result.corpus.Add(std::move(post))) {
    ++result.duplicates;
    result.warnings.push_back(
        fmt::format("line {}: duplicate post_id '{}' ignored", line, *raw.post_id));
  }
}

std::optional<std::string> JsonField(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
  return it->dump();
}

void IngestJsonl(std::istream& in, IngestResult& result) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++result.records_seen;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      ++result.skipped_malformed;
      result.warnings.push_back(fmt::format("line {}: malformed JSON record", line_no));
      continue;
    }
    RawRecord raw{JsonField(obj, "post_id"), JsonField(obj, "user_id"),
                  JsonField(obj, "thread_id"), JsonField(obj, "created_at"),
                  JsonField(obj, "text")};
    if (auto it = obj.find("text"); it != obj.end() && !it->is_string()) raw.text.reset();
    Accept(result, raw, line_no);
  }
}

void IngestCsv(std::istream& in, IngestResult& result) {
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header) return;
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header->size(); ++i) {
      if ((*header)[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto c_post = column("post_id"), c_user = column("user_id"),
             c_thread = column("thread_id"), c_time = column("created_at"),
             c_text = column("text");
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;  // blank line
    ++result.records_seen;
    auto get = [&](std::optional<std::size_t> c) -> std::optional<std::string> {
      if (!c || *c >= row->size()) return std::nullopt;
      return (*row)[*c];
    };
    RawRecord raw{get(c_post), get(c_user), get(c_thread), get(c_time), get(c_text)};
    Accept(result, raw, reader.line());
  }
}

}  // namespace

IngestResult IngestStream(std::istream& in, InputFormat format) {
  IngestResult result;
  if (format == InputFormat::kCsv) {
    IngestCsv(in, result);
  } else {
    IngestJsonl(in, result);
  }
  return result;
}

IngestResult Ingest(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  return IngestStream(in, format);
}

void ExportJsonl(const Corpus& corpus, std::ostream& out) {
  for (const Post& p : corpus.posts()) {
    json obj = {{"post_id", p.post_id},
                {"user_id", p.user_id},
                {"thread_id", p.thread_id},
                {"created_at", p.created_at.time_since_epoch().count()},
                {"text", p.text}};
    out << obj.dump() << '\n';
  }
}

void ExportJsonl(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  ExportJsonl(corpus, out);
}

std::vector<Post> Sample(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  if (n > corpus.size()) {
    throw InvalidArgument(
        fmt::format("sample size {} exceeds corpus size {}", n, corpus.size()));
  }
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first n slots end up a uniform n-subset in
  // uniformly random order.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(UniformBelow(rng, order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<Post> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(corpus.posts()[order[i]]);
  return out;
}

UserTimeline Timeline(const Corpus& corpus, std::string_view user_id) {
  auto it = corpus.user_index().find(user_id);
  if (it == corpus.user_index().end()) {
    throw InvalidArgument(fmt::format("unknown user '{}'", user_id));
  }
  UserTimeline tl;
  tl.user_id = std::string(user_id);
  tl.posts.reserve(it->second.size());
  for (std::size_t idx : it->second) tl.posts.push_back(corpus.posts()[idx]);
  std::sort(tl.posts.begin(), tl.posts.end(), [](const Post& a, const Post& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.post_id < b.post_id;
  });
  return tl;
}

std::vector<UserTimeline> AllTimelines(const Corpus& corpus) {
  std::vector<UserTimeline> out;
  out.reserve(corpus.user_index().size());
  for (const auto& [user, _] : corpus.user_index()) out.push_back(Timeline(corpus, user));
  return out;
}

}  // namespace annotkit
