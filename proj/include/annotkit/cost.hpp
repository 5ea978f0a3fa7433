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

#ifndef ANNOTKIT_COST_HPP_
#define ANNOTKIT_COST_HPP_

#include <chrono>
#include <cstddef>
#include <string_view>

namespace annotkit {

enum class UsageSource { kEstimated, kReported };

// Token and spend accounting for one annotation run. Prices are in dollars
// per 1,000 tokens.
struct CostLedger {
  std::size_t prompt_tokens_per_batch = 0;
  std::size_t post_tokens_total = 0;
  std::size_t output_tokens_total = 0;
  double price_per_1000_tokens = 0.01;
  std::size_t batches_sent = 0;
  double total_cost = 0;
  std::chrono::milliseconds wall_time{0};
  UsageSource usage_source = UsageSource::kEstimated;

  // (prompt_tokens_per_batch * batches_sent + post_tokens_total +
  //  output_tokens_total) * price / 1000
  double ComputeTotal() const;
  void Finalize() { total_cost = ComputeTotal(); }
};

std::string_view UsageSourceName(UsageSource s);

// Input-cost projection for annotating n posts in batches.
struct CostProjection {
  std::size_t batches = 0;           // ceil(n_posts / batch_size)
  std::size_t tokens_per_batch = 0;  // prompt + batch_size * post
  double cost_per_batch = 0;
  double total_cost = 0;             // batches * cost_per_batch
  double cost_per_post = 0;          // cost_per_batch / batch_size
};

// Throws Error(kInvalidArgument) unless every count is positive.
CostProjection EstimateCost(std::size_t n_posts, std::size_t batch_size,
                            std::size_t prompt_tokens, std::size_t post_tokens,
                            double price_per_1000);

}  // namespace annotkit

#endif  // ANNOTKIT_COST_HPP_
