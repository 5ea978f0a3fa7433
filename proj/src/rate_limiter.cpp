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

#include "annotkit/rate_limiter.hpp"

#include <thread>

namespace annotkit {

RateLimiter::RateLimiter(double requests_per_minute) : rpm_(requests_per_minute) {
  if (rpm_ > 0) {
    interval_ = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(60.0 / rpm_));
  }
}

void RateLimiter::Acquire() {
  if (rpm_ <= 0) return;
  Clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = Clock::now();
    slot = next_slot_ > now ? next_slot_ : now;
    next_slot_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace annotkit
