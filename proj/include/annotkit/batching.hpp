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

#ifndef ANNOTKIT_BATCHING_HPP_
#define ANNOTKIT_BATCHING_HPP_

#include <span>
#include <string>
#include <vector>

#include "annotkit/corpus.hpp"
#include "annotkit/prompt.hpp"
#include "annotkit/tokens.hpp"

namespace annotkit {

struct BatchPost {
  int ordinal = 0;  // 1-based position in the rendered user message
  std::string post_id;
  std::string text;
};

struct BatchRequest {
  std::string batch_id;
  std::string template_id;
  ResponseMode response_mode = ResponseMode::kStructured;
  std::vector<BatchPost> posts;  // ordinals 1..n, contiguous
  std::string rendered_system;
  std::string rendered_user;
};

// A batch (or lone post) that could not be sent or could not be parsed.
struct BatchFailure {
  std::string batch_id;
  std::string error;
  std::vector<std::string> post_ids;
};

// Builds and renders a request over `posts`, numbering them from 1.
BatchRequest MakeBatch(std::string batch_id, const PromptTemplate& tmpl,
                       std::span<const BatchPost> posts);
BatchRequest MakeBatch(std::string batch_id, const PromptTemplate& tmpl,
                       std::span<const Post> posts);

// Estimated request size: estimator(system) + sum of estimator(post line).
std::size_t EstimateBatchTokens(const BatchRequest& batch, const TokenEstimator& estimator);

struct BatchingOptions {
  std::size_t batch_size = 50;
  std::size_t token_budget = 128000;
  TokenEstimator estimator = DefaultTokenEstimator();
  std::string id_prefix = "b";
};

struct BatchPlan {
  std::vector<BatchRequest> batches;
  std::vector<BatchFailure> excluded;  // posts too large to send at all
};

// Splits posts in order into consecutive batches of batch_size (the last may
// be shorter). A batch over token_budget is cut greedily into smaller runs;
// a post that alone exceeds the budget is excluded with a failure record.
// Throws Error(kInvalidArgument) if batch_size is 0 or the rendered system
// message alone does not fit in token_budget.
BatchPlan AssembleBatches(std::span<const Post> posts, const PromptTemplate& tmpl,
                          const BatchingOptions& options);

}  // namespace annotkit

#endif  // ANNOTKIT_BATCHING_HPP_
