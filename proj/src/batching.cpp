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

#include "annotkit/batching.hpp"

#include <fmt/format.h>

#include "annotkit/errors.hpp"

namespace annotkit {

namespace {

std::size_t LineTokens(const TokenEstimator& est, int ordinal, const std::string& text) {
  return est(fmt::format("Post {}: {}", ordinal, text));
}

}  // namespace

BatchRequest MakeBatch(std::string batch_id, const PromptTemplate& tmpl,
                       std::span<const BatchPost> posts) {
  BatchRequest b;
  b.batch_id = std::move(batch_id);
  b.template_id = tmpl.template_id;
  b.response_mode = tmpl.response_mode;
  std::vector<std::string> texts;
  texts.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    b.posts.push_back({static_cast<int>(i + 1), posts[i].post_id, posts[i].text});
    texts.push_back(posts[i].text);
  }
  b.rendered_system = RenderSystemMessage(tmpl);
  b.rendered_user = RenderUserMessage(texts);
  return b;
}

BatchRequest MakeBatch(std::string batch_id, const PromptTemplate& tmpl,
                       std::span<const Post> posts) {
  std::vector<BatchPost> bp;
  bp.reserve(posts.size());
  for (const Post& p : posts) bp.push_back({0, p.post_id, p.text});
  return MakeBatch(std::move(batch_id), tmpl, bp);
}

std::size_t EstimateBatchTokens(const BatchRequest& batch, const TokenEstimator& estimator) {
  std::size_t total = estimator(batch.rendered_system);
  for (const auto& p : batch.posts) total += LineTokens(estimator, p.ordinal, p.text);
  return total;
}

BatchPlan AssembleBatches(std::span<const Post> posts, const PromptTemplate& tmpl,
                          const BatchingOptions& options) {
  if (options.batch_size == 0) throw InvalidArgument("batch_size must be at least 1");
  const std::size_t prompt_tokens = options.estimator(RenderSystemMessage(tmpl));
  if (options.token_budget <= prompt_tokens) {
    throw InvalidArgument(fmt::format("token budget {} does not exceed the prompt's {} tokens",
                                      options.token_budget, prompt_tokens));
  }

  BatchPlan plan;
  std::size_t next_id = 1;
  auto new_id = [&] { return fmt::format("{}{:05d}", options.id_prefix, next_id++); };

  std::vector<BatchPost> current;
  std::size_t current_tokens = prompt_tokens;
  auto flush = [&] {
    if (current.empty()) return;
    plan.batches.push_back(MakeBatch(new_id(), tmpl, current));
    current.clear();
    current_tokens = prompt_tokens;
  };

  for (std::size_t start = 0; start < posts.size(); start += options.batch_size) {
    const std::size_t end = std::min(posts.size(), start + options.batch_size);
    for (std::size_t i = start; i < end; ++i) {
      const Post& p = posts[i];
      if (prompt_tokens + LineTokens(options.estimator, 1, p.text) > options.token_budget) {
        flush();
        plan.excluded.push_back(
            {new_id(),
             fmt::format("post '{}' alone exceeds the token budget of {}", p.post_id,
                         options.token_budget),
             {p.post_id}});
        continue;
      }
      const int ordinal = static_cast<int>(current.size() + 1);
      std::size_t line = LineTokens(options.estimator, ordinal, p.text);
      if (current_tokens + line > options.token_budget) {
        flush();
        line = LineTokens(options.estimator, 1, p.text);
      }
      current.push_back({0, p.post_id, p.text});
      current_tokens += line;
    }
    flush();
  }
  return plan;
}

}  // namespace annotkit
