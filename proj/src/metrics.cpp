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

#include "annotkit/metrics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "annotkit/errors.hpp"
#include "annotkit/random.hpp"

namespace annotkit {

int ClassCount(Granularity g) {
  return g == Granularity::kCoarse ? kCoarseClassCount : kFullClassCount;
}

int ClassOf(Label label, Granularity g) {
  return g == Granularity::kCoarse ? static_cast<int>(Coarse(label)) : label.index();
}

std::string ClassName(int cls, Granularity g) {
  if (g == Granularity::kCoarse) {
    return std::string(CoarseShortName(static_cast<ViolenceClass>(cls)));
  }
  return LabelCode(Label::FromIndex(cls));
}

Granularity ParseGranularity(std::string_view name) {
  if (name == "coarse") return Granularity::kCoarse;
  if (name == "full") return Granularity::kFull;
  throw InvalidArgument(fmt::format("unknown granularity '{}' (coarse|full)", name));
}

ConfusionMatrix::ConfusionMatrix(Granularity g)
    : granularity(g),
      counts(ClassCount(g), std::vector<std::size_t>(ClassCount(g), 0)) {}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) t += c;
  }
  return t;
}

std::size_t ConfusionMatrix::row_sum(int row) const {
  std::size_t t = 0;
  for (std::size_t c : counts[row]) t += c;
  return t;
}

std::size_t ConfusionMatrix::col_sum(int col) const {
  std::size_t t = 0;
  for (const auto& row : counts) t += row[col];
  return t;
}

ConfusionMatrix Confusion(std::span<const Annotation> truth, std::span<const Annotation> pred,
                          Granularity g) {
  std::unordered_map<std::string_view, Label> predicted;
  predicted.reserve(pred.size());
  for (const auto& a : pred) predicted.emplace(a.post_id, a.label);
  ConfusionMatrix m(g);
  std::set<std::string_view> seen;
  for (const auto& a : truth) {
    auto it = predicted.find(a.post_id);
    if (it == predicted.end() || !seen.insert(a.post_id).second) continue;
    ++m.counts[ClassOf(a.label, g)][ClassOf(it->second, g)];
  }
  if (seen.empty()) throw InvalidArgument("annotation sets share no post_id");
  return m;
}

ConfusionMatrix ConfusionFromLabels(std::span<const Label> truth, std::span<const Label> pred,
                                    Granularity g) {
  if (truth.size() != pred.size()) throw InvalidArgument("label sequences differ in length");
  if (truth.empty()) throw InvalidArgument("empty label sequences");
  ConfusionMatrix m(g);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++m.counts[ClassOf(truth[i], g)][ClassOf(pred[i], g)];
  }
  return m;
}

double CohenKappa(const ConfusionMatrix& m) {
  const std::size_t total = m.total();
  if (total == 0) throw InvalidArgument("kappa of an empty confusion matrix");
  const double n = static_cast<double>(total);
  double observed = 0, chance = 0;
  for (int c = 0; c < m.classes(); ++c) {
    observed += static_cast<double>(m.counts[c][c]);
    chance += static_cast<double>(m.row_sum(c)) * static_cast<double>(m.col_sum(c));
  }
  observed /= n;
  chance /= n * n;
  if (chance >= 1.0) {
    if (observed >= 1.0) return 1.0;
    throw InvalidArgument("kappa undefined: chance agreement is 1");
  }
  return (observed - chance) / (1.0 - chance);
}

F1Scores ComputeF1(const ConfusionMatrix& m) {
  const std::size_t total = m.total();
  if (total == 0) throw InvalidArgument("F1 of an empty confusion matrix");
  F1Scores out;
  out.per_class.resize(m.classes());
  double weighted = 0, macro = 0;
  int present = 0;
  for (int c = 0; c < m.classes(); ++c) {
    ClassScore& s = out.per_class[c];
    const double tp = static_cast<double>(m.counts[c][c]);
    const std::size_t predicted = m.col_sum(c);
    s.support = m.row_sum(c);
    s.precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
    s.recall = s.support ? tp / static_cast<double>(s.support) : 0.0;
    s.f1 = s.precision + s.recall > 0
               ? 2 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    if (s.support > 0) {
      weighted += static_cast<double>(s.support) * s.f1;
      macro += s.f1;
      ++present;
    }
  }
  out.weighted = weighted / static_cast<double>(total);
  out.macro = macro / present;
  return out;
}

std::vector<double> RatiosTo(std::span<const double> shares, std::span<const double> reference) {
  if (shares.size() != reference.size()) throw InvalidArgument("distribution length mismatch");
  std::vector<double> out(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    out[i] = reference[i] > 0 ? shares[i] / reference[i]
                              : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Distribution ClassDistribution(std::span<const Annotation> annotations, Granularity g,
                               std::optional<std::vector<double>> reference) {
  if (annotations.empty()) throw InvalidArgument("class distribution of an empty set");
  Distribution d;
  d.granularity = g;
  d.n = annotations.size();
  std::vector<std::size_t> counts(ClassCount(g), 0);
  for (const auto& a : annotations) ++counts[ClassOf(a.label, g)];
  d.shares.resize(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    d.shares[c] = static_cast<double>(counts[c]) / static_cast<double>(d.n);
  }
  if (reference) d.ratio_to_reference = RatiosTo(d.shares, *reference);
  return d;
}

namespace {

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

PositionBias ComputePositionBias(std::span<const Annotation> annotations,
                                 std::size_t permutations, std::uint64_t seed) {
  std::set<int> ordinals;
  for (const auto& a : annotations) ordinals.insert(a.ordinal);
  if (ordinals.size() < 2) {
    throw InvalidArgument("position bias needs at least two distinct ordinals");
  }
  PositionBias out;
  out.n = annotations.size();
  std::vector<double> position, violent;
  position.reserve(out.n);
  violent.reserve(out.n);
  for (const auto& a : annotations) {
    position.push_back(a.ordinal);
    violent.push_back(a.label.violent() ? 1.0 : 0.0);
  }
  bool all_same = true;
  for (double v : violent) all_same = all_same && v == violent.front();
  if (all_same) {
    out.degenerate = true;
    return out;
  }
  out.correlation = Pearson(position, violent);
  const double observed = std::abs(out.correlation);
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  std::vector<double> shuffled = violent;
  for (std::size_t i = 0; i < permutations; ++i) {
    StableShuffle(std::span<double>(shuffled), rng);
    // Tolerance keeps exact ties (common with 0/1 data) counted as hits.
    if (std::abs(Pearson(position, shuffled)) >= observed - 1e-12) ++hits;
  }
  out.p_value = static_cast<double>(hits + 1) / static_cast<double>(permutations + 1);
  return out;
}

}  // namespace annotkit
