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

#ifndef ANNOTKIT_REPLAY_BACKEND_HPP_
#define ANNOTKIT_REPLAY_BACKEND_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "annotkit/backend.hpp"

namespace annotkit {

// Fixture key: FNV-1a over model, response mode and both messages.
std::string RequestKey(const ChatRequest& request);

struct RecordedResponse {
  std::string batch_id;  // informational
  Completion completion;
};

// Fixture file: JSONL, one {"key", "batch_id", "response", "usage"?} per line.
std::map<std::string, RecordedResponse> LoadFixtures(const std::filesystem::path& path);
void SaveFixtures(const std::map<std::string, RecordedResponse>& fixtures,
                  const std::filesystem::path& path);

// Answers from recorded fixtures, byte for byte. An unknown request is a
// fatal backend error.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(std::map<std::string, RecordedResponse> fixtures);
  explicit ReplayBackend(const std::filesystem::path& path);

  Completion Complete(const ChatRequest& request) override;

 private:
  std::map<std::string, RecordedResponse> fixtures_;
};

// Forwards to another backend and keeps every successful response.
class RecordingBackend : public Backend {
 public:
  explicit RecordingBackend(Backend& inner) : inner_(inner) {}

  Completion Complete(const ChatRequest& request) override;

  std::map<std::string, RecordedResponse> fixtures() const;
  void Save(const std::filesystem::path& path) const;

 private:
  Backend& inner_;
  mutable std::mutex mu_;
  std::map<std::string, RecordedResponse> fixtures_;
};

}  // namespace annotkit

#endif  // ANNOTKIT_REPLAY_BACKEND_HPP_
