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

#ifndef ANNOTKIT_RUN_HPP_
#define ANNOTKIT_RUN_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "annotkit/backend.hpp"
#include "annotkit/batching.hpp"
#include "annotkit/cost.hpp"
#include "annotkit/prompt.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

struct RunOptions {
  std::size_t batch_size = 50;
  std::size_t token_budget = 128000;
  std::size_t parallelism = 1;
  std::string run_id;  // annotator id; derived from template/model/size if empty
  TokenEstimator estimator = DefaultTokenEstimator();
  double price_per_1000_tokens = 0.01;
  Sleeper sleeper = RealSleeper();
};

struct AnnotationRun {
  std::string run_id;
  BackendConfig config;
  std::string template_id;
  std::size_t batch_size = 0;
  std::size_t input_posts = 0;
  std::vector<Annotation> annotations;  // batch order, then ordinal order
  CostLedger ledger;
  std::vector<BatchFailure> failures;
  std::vector<RetryEvent> retries;

  std::size_t failed_posts() const;
};

// Annotates `posts` end to end: batch, render, submit, parse. Batches run on
// up to options.parallelism workers sharing one rate limiter; results are
// assembled in batch order, so output does not depend on completion order.
//
// A batch whose response does not parse is resent once unchanged, then cut
// in halves recursively down to single posts; whatever still fails is
// recorded in failures. Backend errors are recorded against their batch.
// Every input post ends up in exactly one annotation or one failure.
//
// Throws Error(kInvalidArgument) for an empty post list ("nothing to
// annotate") or an invalid template/config.
AnnotationRun RunAnnotation(std::span<const Post> posts, const PromptTemplate& tmpl,
                            const BackendConfig& config, Backend& backend,
                            const RunOptions& options);

}  // namespace annotkit

#endif  // ANNOTKIT_RUN_HPP_
