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

#ifndef ANNOTKIT_BACKEND_HPP_
#define ANNOTKIT_BACKEND_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "annotkit/batching.hpp"
#include "annotkit/errors.hpp"
#include "annotkit/rate_limiter.hpp"

namespace annotkit {

struct BackendConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model_name = "gpt-4-1106-preview";
  double temperature = 0.1;
  bool structured_output = true;
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{120000};
  double rate_limit_rpm = 0;  // 0 = unlimited
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds backoff_initial{1000};
  std::chrono::milliseconds backoff_max{60000};

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

// Wire-level request: a system and a user message plus sampling settings.
struct ChatRequest {
  std::string batch_id;
  std::string model;
  double temperature = 0.1;
  bool structured_output = true;
  std::string system_message;
  std::string user_message;
};

ChatRequest ToChatRequest(const BatchRequest& batch, const BackendConfig& config);

struct TokenUsage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
};

struct Completion {
  std::string text;
  std::optional<TokenUsage> usage;  // set when the backend reports it
};

// A chat-completion service. Failures are reported as Error with kind
// kBackendTransient (worth retrying), kBackendAuth or kBackendFatal.
// Implementations must be safe to call from several threads.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion Complete(const ChatRequest& request) = 0;
};

struct RetryEvent {
  std::string batch_id;
  int attempt = 0;  // the attempt that failed, from 1
  std::string error;
  std::chrono::milliseconds delay{0};
};

class RetryLog {
 public:
  void Record(RetryEvent event);
  std::vector<RetryEvent> events() const;

 private:
  mutable std::mutex mu_;
  std::vector<RetryEvent> events_;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper RealSleeper();

// Sends one batch. Transient failures are retried up to config.max_retries
// times with exponential backoff (backoff_initial * 2^k, capped at
// backoff_max). Every attempt first takes a slot from `limiter` if given.
// Throws Error(kBackendTransient) once retries are exhausted; auth and
// fatal errors propagate immediately.
Completion Submit(Backend& backend, const BatchRequest& request, const BackendConfig& config,
                  RateLimiter* limiter = nullptr, RetryLog* log = nullptr,
                  const Sleeper& sleep = RealSleeper());

}  // namespace annotkit

#endif  // ANNOTKIT_BACKEND_HPP_
