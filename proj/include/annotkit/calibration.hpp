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

#ifndef ANNOTKIT_CALIBRATION_HPP_
#define ANNOTKIT_CALIBRATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annotkit/agreement_report.hpp"
#include "annotkit/backend.hpp"
#include "annotkit/prompt.hpp"
#include "annotkit/run.hpp"

namespace annotkit {

inline const std::vector<std::size_t> kDefaultSweepSizes = {10, 20, 50, 100, 200};

// A size whose run lost more than this share of posts is not selectable.
inline constexpr double kUnusableFailureShare = 0.10;

// Distances closer than this count as ties (broken toward the smaller size).
inline constexpr double kDistanceTieTolerance = 1e-9;

enum class DistanceMetric { kL1 };

struct SweepResult {
  std::vector<std::size_t> batch_sizes;
  std::vector<std::vector<double>> distributions;  // coarse shares per size
  std::vector<bool> usable;
  std::vector<double> failure_share;
  // agreement[size][human] when human sets were supplied.
  std::vector<std::vector<AgreementReport>> agreement;
  DistanceMetric distance_metric = DistanceMetric::kL1;
  std::vector<double> distances;  // filled by SelectBatchSize
  std::optional<std::size_t> chosen_size;
  std::vector<AnnotationRun> runs;
};

// One annotation run per size over the same posts. Runs execute one after
// another; each uses base_options.parallelism internally.
SweepResult Sweep(std::span<const Post> posts, const PromptTemplate& tmpl,
                  const BackendConfig& config, Backend& backend,
                  std::span<const std::size_t> batch_sizes, const RunOptions& base_options,
                  std::span<const AnnotationSet> humans = {});

// Unweighted mean of each human set's coarse distribution over the posts
// all sets annotate. Throws Error(kInvalidArgument) on no sets or an empty
// intersection.
std::vector<double> ReferenceDistribution(std::span<const AnnotationSet> humans);

double L1Distance(std::span<const double> a, std::span<const double> b);

// Argmin of L1 distance to `reference` over usable sizes; ties go to the
// smallest size. Records distances and chosen_size in `sweep`. Throws
// Error(kInvalidArgument) if no size is usable.
std::size_t SelectBatchSize(SweepResult& sweep, std::span<const double> reference);

// Relative change of one class share between two sizes.
struct ShareShift {
  ViolenceClass cls = ViolenceClass::kNonViolent;
  std::size_t from_size = 0;
  std::size_t to_size = 0;
  double from_share = 0;
  double to_share = 0;
  double relative_change = 0;  // (to - from) / from
};

ShareShift ComputeShift(const SweepResult& sweep, ViolenceClass cls, std::size_t from_size,
                        std::size_t to_size);

// "Impl. share drops by 86% from 14% to 2% (s=10 -> s=200)".
std::string DescribeShift(const ShareShift& shift);

// Class-by-size table: "0.58 (1.00)" cells with ratios to the first size,
// plus an H-avg column when a reference is given.
std::string RenderSweepMarkdown(const SweepResult& sweep,
                                std::optional<std::vector<double>> reference = std::nullopt);
std::string RenderSweepJson(const SweepResult& sweep,
                            std::optional<std::vector<double>> reference = std::nullopt);

}  // namespace annotkit

#endif  // ANNOTKIT_CALIBRATION_HPP_
