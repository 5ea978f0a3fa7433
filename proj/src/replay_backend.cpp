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

#include "annotkit/replay_backend.hpp"

#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/hash.hpp"

namespace annotkit {

using nlohmann::json;

std::string RequestKey(const ChatRequest& request) {
  std::string material = request.model;
  material.push_back('\0');
  material += request.structured_output ? "structured" : "plain";
  material.push_back('\0');
  material += request.system_message;
  material.push_back('\0');
  material += request.user_message;
  return HexDigest(Fnv1a64(material));
}

std::map<std::string, RecordedResponse> LoadFixtures(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read fixture file " + path.string());
  std::map<std::string, RecordedResponse> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("key") || !rec.contains("response")) {
      throw ParseError(fmt::format("{}:{}: malformed fixture record", path.string(), line_no));
    }
    RecordedResponse r;
    r.batch_id = rec.value("batch_id", "");
    r.completion.text = rec["response"].get<std::string>();
    if (auto it = rec.find("usage"); it != rec.end() && it->is_object()) {
      r.completion.usage = TokenUsage{it->value("prompt_tokens", std::size_t{0}),
                                      it->value("completion_tokens", std::size_t{0})};
    }
    out.insert_or_assign(rec["key"].get<std::string>(), std::move(r));
  }
  return out;
}

void SaveFixtures(const std::map<std::string, RecordedResponse>& fixtures,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write fixture file " + path.string());
  for (const auto& [key, r] : fixtures) {
    json rec = {{"key", key}, {"batch_id", r.batch_id}, {"response", r.completion.text}};
    if (r.completion.usage) {
      rec["usage"] = {{"prompt_tokens", r.completion.usage->prompt_tokens},
                      {"completion_tokens", r.completion.usage->completion_tokens}};
    }
    out << rec.dump() << '\n';
  }
}

ReplayBackend::ReplayBackend(std::map<std::string, RecordedResponse> fixtures)
    : fixtures_(std::move(fixtures)) {}

ReplayBackend::ReplayBackend(const std::filesystem::path& path)
    : fixtures_(LoadFixtures(path)) {}

Completion ReplayBackend::Complete(const ChatRequest& request) {
  const std::string key = RequestKey(request);
  auto it = fixtures_.find(key);
  if (it == fixtures_.end()) {
    throw Error(ErrorKind::kBackendFatal,
                fmt::format("no recorded response for batch {} (key {})", request.batch_id, key));
  }
  return it->second.completion;
}

Completion RecordingBackend::Complete(const ChatRequest& request) {
  Completion c = inner_.Complete(request);
  std::lock_guard<std::mutex> lock(mu_);
  fixtures_.insert_or_assign(RequestKey(request), RecordedResponse{request.batch_id, c});
  return c;
}

std::map<std::string, RecordedResponse> RecordingBackend::fixtures() const {
  std::lock_guard<std::mutex> lock(mu_);
  return fixtures_;
}

void RecordingBackend::Save(const std::filesystem::path& path) const {
  SaveFixtures(fixtures(), path);
}

}  // namespace annotkit
