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

#ifndef ANNOTKIT_METRICS_HPP_
#define ANNOTKIT_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annotkit/taxonomy.hpp"

namespace annotkit {

// Coarse: NonViolent / Explicit / Implicit. Full: the seven label codes.
enum class Granularity { kCoarse, kFull };

int ClassCount(Granularity g);
int ClassOf(Label label, Granularity g);
std::string ClassName(int cls, Granularity g);
Granularity ParseGranularity(std::string_view name);

// Rows are ground truth, columns predictions.
struct ConfusionMatrix {
  Granularity granularity = Granularity::kCoarse;
  std::vector<std::vector<std::size_t>> counts;

  explicit ConfusionMatrix(Granularity g = Granularity::kCoarse);

  int classes() const { return static_cast<int>(counts.size()); }
  std::size_t total() const;
  std::size_t row_sum(int row) const;
  std::size_t col_sum(int col) const;
};

// Counts over the post_ids both sets annotate. Throws Error(kInvalidArgument)
// when the intersection is empty.
ConfusionMatrix Confusion(std::span<const Annotation> truth, std::span<const Annotation> pred,
                          Granularity g);

// Same, for parallel label sequences.
ConfusionMatrix ConfusionFromLabels(std::span<const Label> truth, std::span<const Label> pred,
                                    Granularity g);

// (p_o - p_e) / (1 - p_e). Returns 1 when p_e = p_o = 1. Throws
// Error(kInvalidArgument) for an empty matrix or p_e = 1 with p_o < 1.
double CohenKappa(const ConfusionMatrix& m);

struct ClassScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;  // 0 when precision + recall = 0
  std::size_t support = 0;  // truth count
};

struct F1Scores {
  double weighted = 0;  // weighted by truth support
  double macro = 0;     // mean over classes present in truth
  std::vector<ClassScore> per_class;
};

F1Scores ComputeF1(const ConfusionMatrix& m);

struct Distribution {
  Granularity granularity = Granularity::kCoarse;
  std::size_t n = 0;
  std::vector<double> shares;
  std::vector<double> ratio_to_reference;  // empty unless a reference is given
};

// Element-wise share / reference; NaN where the reference share is 0.
std::vector<double> RatiosTo(std::span<const double> shares, std::span<const double> reference);

// Throws Error(kInvalidArgument) for an empty set or a reference of the
// wrong length.
Distribution ClassDistribution(std::span<const Annotation> annotations, Granularity g,
                               std::optional<std::vector<double>> reference = std::nullopt);

struct PositionBias {
  double correlation = 0;
  double p_value = 1;
  bool degenerate = false;  // every label identical
  std::size_t n = 0;
};

// Pearson correlation between in-batch ordinal and the violent indicator,
// with a two-sided permutation p-value (1 + hits) / (1 + permutations).
// Throws Error(kInvalidArgument) with fewer than two distinct ordinals.
PositionBias ComputePositionBias(std::span<const Annotation> annotations,
                                 std::size_t permutations = 10000, std::uint64_t seed = 0);

}  // namespace annotkit

#endif  // ANNOTKIT_METRICS_HPP_
