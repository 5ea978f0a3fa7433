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

#include "annotkit/cost.hpp"

#include "annotkit/errors.hpp"

namespace annotkit {

double CostLedger::ComputeTotal() const {
  const double tokens = static_cast<double>(prompt_tokens_per_batch * batches_sent +
                                            post_tokens_total + output_tokens_total);
  return tokens * price_per_1000_tokens / 1000.0;
}

std::string_view UsageSourceName(UsageSource s) {
  return s == UsageSource::kReported ? "reported" : "estimated";
}

CostProjection EstimateCost(std::size_t n_posts, std::size_t batch_size,
                            std::size_t prompt_tokens, std::size_t post_tokens,
                            double price_per_1000) {
  if (n_posts == 0 || batch_size == 0 || prompt_tokens == 0 || post_tokens == 0 ||
      !(price_per_1000 > 0)) {
    throw InvalidArgument("cost projection needs positive counts and price");
  }
  CostProjection p;
  p.batches = (n_posts + batch_size - 1) / batch_size;
  p.tokens_per_batch = prompt_tokens + batch_size * post_tokens;
  p.cost_per_batch = static_cast<double>(p.tokens_per_batch) * price_per_1000 / 1000.0;
  p.total_cost = static_cast<double>(p.batches) * p.cost_per_batch;
  p.cost_per_post = p.cost_per_batch / static_cast<double>(batch_size);
  return p;
}

}  // namespace annotkit
