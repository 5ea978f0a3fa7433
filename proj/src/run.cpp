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

#include "annotkit/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "annotkit/response.hpp"

namespace annotkit {

std::size_t AnnotationRun::failed_posts() const {
  std::size_t n = 0;
  for (const auto& f : failures) n += f.post_ids.size();
  return n;
}

namespace {

struct BatchOutcome {
  std::vector<Annotation> annotations;
  std::vector<BatchFailure> failures;
  std::size_t requests = 0;
  std::size_t post_tokens = 0;
  std::size_t output_tokens = 0;
  std::size_t reported_prompt_tokens = 0;
  bool reported = false;
};

std::vector<std::string> PostIds(const BatchRequest& b) {
  std::vector<std::string> ids;
  ids.reserve(b.posts.size());
  for (const auto& p : b.posts) ids.push_back(p.post_id);
  return ids;
}

class BatchProcessor {
 public:
  BatchProcessor(const PromptTemplate& tmpl, const BackendConfig& config, Backend& backend,
                 const RunOptions& options, const std::string& run_id, RateLimiter& limiter,
                 RetryLog& retries)
      : tmpl_(tmpl), config_(config), backend_(backend), options_(options), run_id_(run_id),
        limiter_(limiter), retries_(retries) {}

  BatchOutcome Process(const BatchRequest& batch) {
    BatchOutcome out;
    Attempt(batch, /*allow_intact_retry=*/true, out);
    return out;
  }

 private:
  void Account(const BatchRequest& batch, const Completion& c, BatchOutcome& out) {
    ++out.requests;
    if (c.usage) {
      out.reported = true;
      out.reported_prompt_tokens += c.usage->prompt_tokens;
      out.output_tokens += c.usage->completion_tokens;
    } else {
      for (const auto& p : batch.posts) {
        out.post_tokens += options_.estimator(fmt::format("Post {}: {}", p.ordinal, p.text));
      }
      out.output_tokens += options_.estimator(c.text);
    }
  }

  void Attempt(const BatchRequest& batch, bool allow_intact_retry, BatchOutcome& out) {
    const ResponseMode mode =
        config_.structured_output ? ResponseMode::kStructured : ResponseMode::kPlain;
    std::string parse_error;
    for (int round = 0; round < (allow_intact_retry ? 2 : 1); ++round) {
      Completion c;
      try {
        c = Submit(backend_, batch, config_, &limiter_, &retries_, options_.sleeper);
      } catch (const Error& e) {
        out.failures.push_back({batch.batch_id, e.what(), PostIds(batch)});
        return;
      }
      Account(batch, c, out);
      try {
        auto annotations = ParseResponse(c.text, batch, mode, run_id_);
        if (!tmpl_.requires_reason) {
          for (auto& a : annotations) a.reason.reset();
        }
        for (auto& a : annotations) out.annotations.push_back(std::move(a));
        return;
      } catch (const Error& e) {
        parse_error = e.what();
      }
    }
    if (batch.posts.size() <= 1) {
      out.failures.push_back({batch.batch_id, parse_error, PostIds(batch)});
      return;
    }
    const std::size_t half = batch.posts.size() / 2;
    std::span<const BatchPost> all(batch.posts);
    Attempt(MakeBatch(batch.batch_id + "/1", tmpl_, all.first(half)), false, out);
    Attempt(MakeBatch(batch.batch_id + "/2", tmpl_, all.subspan(half)), false, out);
  }

  const PromptTemplate& tmpl_;
  const BackendConfig& config_;
  Backend& backend_;
  const RunOptions& options_;
  const std::string& run_id_;
  RateLimiter& limiter_;
  RetryLog& retries_;
};

}  // namespace

AnnotationRun RunAnnotation(std::span<const Post> posts, const PromptTemplate& tmpl,
                            const BackendConfig& config, Backend& backend,
                            const RunOptions& options) {
  if (posts.empty()) throw InvalidArgument("nothing to annotate");
  tmpl.Validate();
  config.Validate();
  const auto started = std::chrono::steady_clock::now();

  PromptTemplate effective = tmpl;
  // The backend's output mode decides how responses are read.
  effective.response_mode =
      config.structured_output ? ResponseMode::kStructured : ResponseMode::kPlain;

  AnnotationRun run;
  run.run_id = options.run_id.empty()
                   ? fmt::format("{}/{}/s{}", config.model_name, tmpl.template_id, options.batch_size)
                   : options.run_id;
  run.config = config;
  run.template_id = tmpl.template_id;
  run.batch_size = options.batch_size;
  run.input_posts = posts.size();

  BatchingOptions batching;
  batching.batch_size = options.batch_size;
  batching.token_budget = options.token_budget;
  batching.estimator = options.estimator;
  BatchPlan plan = AssembleBatches(posts, effective, batching);

  RateLimiter limiter(config.rate_limit_rpm);
  RetryLog retries;
  BatchProcessor processor(effective, config, backend, options, run.run_id, limiter, retries);

  std::vector<BatchOutcome> outcomes(plan.batches.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < plan.batches.size(); i = next++) {
      outcomes[i] = processor.Process(plan.batches[i]);
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.parallelism, plan.batches.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  CostLedger& ledger = run.ledger;
  ledger.price_per_1000_tokens = options.price_per_1000_tokens;
  ledger.prompt_tokens_per_batch = options.estimator(RenderSystemMessage(effective));
  std::size_t reported_prompt = 0;
  bool reported = false;
  for (auto& f : plan.excluded) run.failures.push_back(std::move(f));
  for (auto& o : outcomes) {
    for (auto& a : o.annotations) run.annotations.push_back(std::move(a));
    for (auto& f : o.failures) run.failures.push_back(std::move(f));
    ledger.batches_sent += o.requests;
    ledger.post_tokens_total += o.post_tokens;
    ledger.output_tokens_total += o.output_tokens;
    reported_prompt += o.reported_prompt_tokens;
    reported = reported || o.reported;
  }
  if (reported) {
    ledger.usage_source = UsageSource::kReported;
    const std::size_t fixed = ledger.prompt_tokens_per_batch * ledger.batches_sent;
    ledger.post_tokens_total += reported_prompt > fixed ? reported_prompt - fixed : 0;
  }
  ledger.Finalize();
  run.retries = retries.events();
  std::stable_sort(run.retries.begin(), run.retries.end(),
                   [](const RetryEvent& a, const RetryEvent& b) {
                     return std::tie(a.batch_id, a.attempt) < std::tie(b.batch_id, b.attempt);
                   });
  ledger.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return run;
}

}  // namespace annotkit
