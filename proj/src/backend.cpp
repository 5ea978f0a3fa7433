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

#include "annotkit/backend.hpp"

#include <algorithm>
#include <thread>

#include <fmt/format.h>

namespace annotkit {

void BackendConfig::Validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw InvalidArgument(fmt::format("temperature {} outside [0, 2]", temperature));
  }
  if (max_retries < 0) throw InvalidArgument("max_retries must be >= 0");
  if (rate_limit_rpm < 0) throw InvalidArgument("rate_limit must be >= 0");
  if (model_name.empty()) throw InvalidArgument("model_name is empty");
}

ChatRequest ToChatRequest(const BatchRequest& batch, const BackendConfig& config) {
  return {batch.batch_id,       config.model_name,   config.temperature,
          config.structured_output, batch.rendered_system, batch.rendered_user};
}

void RetryLog::Record(RetryEvent event) {
  std::lock_guard<std::mutex> lock(mu_);
  events_.push_back(std::move(event));
}

std::vector<RetryEvent> RetryLog::events() const {
  std::lock_guard<std::mutex> lock(mu_);
  return events_;
}

Sleeper RealSleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

Completion Submit(Backend& backend, const BatchRequest& request, const BackendConfig& config,
                  RateLimiter* limiter, RetryLog* log, const Sleeper& sleep) {
  const ChatRequest chat = ToChatRequest(request, config);
  std::chrono::milliseconds delay = config.backoff_initial;
  for (int attempt = 1;; ++attempt) {
    if (limiter) limiter->Acquire();
    try {
      return backend.Complete(chat);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBackendTransient) throw;
      if (attempt > config.max_retries) {
        throw Error(ErrorKind::kBackendTransient,
                    fmt::format("batch {}: retries exhausted after {} attempts: {}",
                                request.batch_id, attempt, e.what()));
      }
      if (log) log->Record({request.batch_id, attempt, e.what(), delay});
      if (sleep) sleep(delay);
      delay = std::min(config.backoff_max, delay * 2);
    }
  }
}

}  // namespace annotkit
