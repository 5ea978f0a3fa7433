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

#ifndef ANNOTKIT_AGREEMENT_REPORT_HPP_
#define ANNOTKIT_AGREEMENT_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annotkit/metrics.hpp"

namespace annotkit {

// Agreement of `pred` against `truth` (truth = rows, as in the table).
struct AgreementReport {
  std::string truth_name;
  std::string pred_name;
  double kappa = 0;
  double f1_weighted = 0;
  double f1_macro = 0;
  std::size_t n = 0;
  std::vector<double> distribution_truth;
  std::vector<double> distribution_pred;
};

AgreementReport Agree(std::span<const Annotation> truth, std::span<const Annotation> pred,
                      Granularity g, std::string truth_name = "", std::string pred_name = "");

struct AgreementCell {
  double kappa = 0;
  double f1_weighted = 0;
  double f1_macro = 0;
  std::size_t n = 0;
  // Best value in its row among non-human columns.
  bool best_kappa = false;
  bool best_weighted = false;
  bool best_macro = false;
};

// Square pairwise table; the diagonal is empty.
struct AgreementMatrix {
  std::vector<std::string> names;
  std::vector<bool> is_human;
  std::vector<std::vector<std::optional<AgreementCell>>> cells;  // [truth][pred]
};

struct AnnotationSet {
  std::string name;
  bool is_human = false;
  std::vector<Annotation> annotations;
};

// Fills every off-diagonal cell and marks per-row bests. Throws
// Error(kInvalidArgument) if any pair shares no post.
AgreementMatrix BuildAgreementMatrix(std::span<const AnnotationSet> sets, Granularity g);

// Recomputes best_* flags from the stored values (ties all marked).
void MarkRowBests(AgreementMatrix& matrix);

// ".69", "-.05", "1.00".
std::string FormatMetric(double value);

// "κ/wF1/mF1" with a '*' after each per-row best, e.g. ".54*/.76*/.63*".
std::string FormatCell(const AgreementCell& cell);

std::string RenderAgreementMarkdown(const AgreementMatrix& matrix);
std::string RenderAgreementJson(const AgreementMatrix& matrix);

}  // namespace annotkit

#endif  // ANNOTKIT_AGREEMENT_REPORT_HPP_
