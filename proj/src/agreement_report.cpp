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

#include "annotkit/agreement_report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/errors.hpp"

namespace annotkit {

AgreementReport Agree(std::span<const Annotation> truth, std::span<const Annotation> pred,
                      Granularity g, std::string truth_name, std::string pred_name) {
  const ConfusionMatrix m = Confusion(truth, pred, g);
  const F1Scores f1 = ComputeF1(m);
  AgreementReport r;
  r.truth_name = std::move(truth_name);
  r.pred_name = std::move(pred_name);
  r.kappa = CohenKappa(m);
  r.f1_weighted = f1.weighted;
  r.f1_macro = f1.macro;
  r.n = m.total();
  const double n = static_cast<double>(r.n);
  for (int c = 0; c < m.classes(); ++c) {
    r.distribution_truth.push_back(static_cast<double>(m.row_sum(c)) / n);
    r.distribution_pred.push_back(static_cast<double>(m.col_sum(c)) / n);
  }
  return r;
}

void MarkRowBests(AgreementMatrix& matrix) {
  const std::size_t k = matrix.names.size();
  for (std::size_t row = 0; row < k; ++row) {
    double best_k = -INFINITY, best_w = -INFINITY, best_m = -INFINITY;
    for (std::size_t col = 0; col < k; ++col) {
      const auto& cell = matrix.cells[row][col];
      if (!cell || matrix.is_human[col]) continue;
      best_k = std::max(best_k, cell->kappa);
      best_w = std::max(best_w, cell->f1_weighted);
      best_m = std::max(best_m, cell->f1_macro);
    }
    for (std::size_t col = 0; col < k; ++col) {
      auto& cell = matrix.cells[row][col];
      if (!cell) continue;
      const bool eligible = !matrix.is_human[col];
      cell->best_kappa = eligible && cell->kappa == best_k;
      cell->best_weighted = eligible && cell->f1_weighted == best_w;
      cell->best_macro = eligible && cell->f1_macro == best_m;
    }
  }
}

AgreementMatrix BuildAgreementMatrix(std::span<const AnnotationSet> sets, Granularity g) {
  AgreementMatrix matrix;
  const std::size_t k = sets.size();
  matrix.cells.assign(k, std::vector<std::optional<AgreementCell>>(k));
  for (const auto& s : sets) {
    matrix.names.push_back(s.name);
    matrix.is_human.push_back(s.is_human);
  }
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      if (row == col) continue;
      AgreementReport r;
      try {
        r = Agree(sets[row].annotations, sets[col].annotations, g);
      } catch (const Error& e) {
        throw InvalidArgument(
            fmt::format("{} vs {}: {}", sets[row].name, sets[col].name, e.what()));
      }
      matrix.cells[row][col] = AgreementCell{r.kappa, r.f1_weighted, r.f1_macro, r.n};
    }
  }
  MarkRowBests(matrix);
  return matrix;
}

std::string FormatMetric(double value) {
  const double rounded = std::round(value * 100.0) / 100.0;
  if (std::abs(rounded) >= 1.0) return fmt::format("{:.2f}", rounded);
  std::string s = fmt::format("{:.2f}", std::abs(rounded));  // "0.69"
  s.erase(0, 1);
  return (rounded < 0 ? "-" : "") + s;
}

std::string FormatCell(const AgreementCell& cell) {
  auto part = [](double v, bool best) { return FormatMetric(v) + (best ? "*" : ""); };
  return fmt::format("{}/{}/{}", part(cell.kappa, cell.best_kappa),
                     part(cell.f1_weighted, cell.best_weighted),
                     part(cell.f1_macro, cell.best_macro));
}

std::string RenderAgreementMarkdown(const AgreementMatrix& matrix) {
  std::string out = "| |";
  for (const auto& name : matrix.names) out += " " + name + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < matrix.names.size(); ++i) out += "---|";
  out += "\n";
  for (std::size_t row = 0; row < matrix.names.size(); ++row) {
    out += "| " + matrix.names[row] + " |";
    for (std::size_t col = 0; col < matrix.names.size(); ++col) {
      const auto& cell = matrix.cells[row][col];
      out += " " + (cell ? FormatCell(*cell) : std::string("-")) + " |";
    }
    out += "\n";
  }
  out += "\nCohen's kappa / weighted F1 / macro F1. Rows are ground truth, columns "
         "predictions. '*' marks the best value per row among non-human columns.\n";
  return out;
}

std::string RenderAgreementJson(const AgreementMatrix& matrix) {
  nlohmann::ordered_json doc;
  doc["annotators"] = matrix.names;
  doc["is_human"] = matrix.is_human;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (std::size_t row = 0; row < matrix.names.size(); ++row) {
    for (std::size_t col = 0; col < matrix.names.size(); ++col) {
      const auto& cell = matrix.cells[row][col];
      if (!cell) continue;
      nlohmann::ordered_json p;
      p["truth"] = matrix.names[row];
      p["pred"] = matrix.names[col];
      p["n"] = cell->n;
      p["kappa"] = cell->kappa;
      p["f1_weighted"] = cell->f1_weighted;
      p["f1_macro"] = cell->f1_macro;
      p["cell"] = FormatCell(*cell);
      pairs.push_back(std::move(p));
    }
  }
  doc["pairs"] = std::move(pairs);
  return doc.dump(2);
}

}  // namespace annotkit
