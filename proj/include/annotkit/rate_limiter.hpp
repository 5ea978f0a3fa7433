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

#ifndef ANNOTKIT_RATE_LIMITER_HPP_
#define ANNOTKIT_RATE_LIMITER_HPP_

#include <chrono>
#include <mutex>

namespace annotkit {

// Spaces request starts at least 60s / requests_per_minute apart. Shared by
// all workers of a run; Acquire() is safe to call concurrently.
class RateLimiter {
 public:
  // 0 disables limiting.
  explicit RateLimiter(double requests_per_minute);

  void Acquire();

  double requests_per_minute() const { return rpm_; }

 private:
  using Clock = std::chrono::steady_clock;

  double rpm_;
  Clock::duration interval_{};
  std::mutex mu_;
  Clock::time_point next_slot_{};
};

}  // namespace annotkit

#endif  // ANNOTKIT_RATE_LIMITER_HPP_
