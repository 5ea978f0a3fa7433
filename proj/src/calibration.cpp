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

#include "annotkit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/errors.hpp"

namespace annotkit {

SweepResult Sweep(std::span<const Post> posts, const PromptTemplate& tmpl,
                  const BackendConfig& config, Backend& backend,
                  std::span<const std::size_t> batch_sizes, const RunOptions& base_options,
                  std::span<const AnnotationSet> humans) {
  if (batch_sizes.empty()) throw InvalidArgument("sweep needs at least one batch size");
  for (std::size_t s : batch_sizes) {
    if (s == 0) throw InvalidArgument("batch sizes must be at least 1");
  }
  SweepResult sweep;
  for (std::size_t size : batch_sizes) {
    RunOptions options = base_options;
    options.batch_size = size;
    options.run_id = base_options.run_id.empty()
                         ? fmt::format("{}/{}/s{}", config.model_name, tmpl.template_id, size)
                         : fmt::format("{}/s{}", base_options.run_id, size);
    AnnotationRun run = RunAnnotation(posts, tmpl, config, backend, options);

    sweep.batch_sizes.push_back(size);
    const double failed =
        static_cast<double>(run.failed_posts()) / static_cast<double>(run.input_posts);
    sweep.failure_share.push_back(failed);
    sweep.usable.push_back(failed <= kUnusableFailureShare && !run.annotations.empty());
    sweep.distributions.push_back(
        run.annotations.empty()
            ? std::vector<double>(kCoarseClassCount, 0.0)
            : ClassDistribution(run.annotations, Granularity::kCoarse).shares);
    std::vector<AgreementReport> reports;
    for (const auto& h : humans) {
      reports.push_back(Agree(h.annotations, run.annotations, Granularity::kCoarse, h.name,
                              run.run_id));
    }
    sweep.agreement.push_back(std::move(reports));
    sweep.runs.push_back(std::move(run));
  }
  return sweep;
}

std::vector<double> ReferenceDistribution(std::span<const AnnotationSet> humans) {
  if (humans.empty()) throw InvalidArgument("reference distribution needs a human set");
  std::set<std::string> common;
  for (const auto& a : humans.front().annotations) common.insert(a.post_id);
  for (std::size_t i = 1; i < humans.size(); ++i) {
    std::set<std::string> ids;
    for (const auto& a : humans[i].annotations) {
      if (common.contains(a.post_id)) ids.insert(a.post_id);
    }
    common = std::move(ids);
  }
  if (common.empty()) throw InvalidArgument("human annotation sets share no post");
  std::vector<double> mean(kCoarseClassCount, 0.0);
  for (const auto& h : humans) {
    std::vector<Annotation> shared;
    std::set<std::string> taken;
    for (const auto& a : h.annotations) {
      if (common.contains(a.post_id) && taken.insert(a.post_id).second) shared.push_back(a);
    }
    const auto d = ClassDistribution(shared, Granularity::kCoarse).shares;
    for (int c = 0; c < kCoarseClassCount; ++c) mean[c] += d[c];
  }
  for (double& m : mean) m /= static_cast<double>(humans.size());
  return mean;
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("distribution length mismatch");
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

std::size_t SelectBatchSize(SweepResult& sweep, std::span<const double> reference) {
  sweep.distances.clear();
  std::optional<std::size_t> best;
  double best_distance = 0;
  for (std::size_t i = 0; i < sweep.batch_sizes.size(); ++i) {
    const double d = L1Distance(sweep.distributions[i], reference);
    sweep.distances.push_back(d);
    const bool usable = i >= sweep.usable.size() || sweep.usable[i];
    if (!usable) continue;
    const std::size_t size = sweep.batch_sizes[i];
    if (!best || d < best_distance - kDistanceTieTolerance ||
        (std::abs(d - best_distance) <= kDistanceTieTolerance && size < *best)) {
      best = size;
      best_distance = d;
    }
  }
  if (!best) throw InvalidArgument("no usable batch size in sweep");
  sweep.chosen_size = best;
  return *best;
}

namespace {

std::size_t IndexOfSize(const SweepResult& sweep, std::size_t size) {
  for (std::size_t i = 0; i < sweep.batch_sizes.size(); ++i) {
    if (sweep.batch_sizes[i] == size) return i;
  }
  throw InvalidArgument(fmt::format("batch size {} not in sweep", size));
}

std::string Share(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

ShareShift ComputeShift(const SweepResult& sweep, ViolenceClass cls, std::size_t from_size,
                        std::size_t to_size) {
  const int c = static_cast<int>(cls);
  ShareShift s;
  s.cls = cls;
  s.from_size = from_size;
  s.to_size = to_size;
  s.from_share = sweep.distributions[IndexOfSize(sweep, from_size)][c];
  s.to_share = sweep.distributions[IndexOfSize(sweep, to_size)][c];
  if (s.from_share <= 0) throw InvalidArgument("relative change from a zero share");
  s.relative_change = (s.to_share - s.from_share) / s.from_share;
  return s;
}

std::string DescribeShift(const ShareShift& shift) {
  const char* verb = shift.relative_change < 0 ? "drops" : "rises";
  return fmt::format("{} share {} by {:.0f}% from {:.0f}% to {:.0f}% (s={} -> s={})",
                     CoarseShortName(shift.cls), verb, std::abs(shift.relative_change) * 100,
                     shift.from_share * 100, shift.to_share * 100, shift.from_size,
                     shift.to_size);
}

std::string RenderSweepMarkdown(const SweepResult& sweep,
                                std::optional<std::vector<double>> reference) {
  if (sweep.batch_sizes.empty()) return "";
  const auto& base = sweep.distributions.front();
  std::string out = "| |";
  for (std::size_t s : sweep.batch_sizes) out += fmt::format(" s={} |", s);
  if (reference) out += " H-avg |";
  out += "\n|---|";
  for (std::size_t i = 0; i < sweep.batch_sizes.size() + (reference ? 1 : 0); ++i) out += "---|";
  out += "\n";
  auto cell = [&](double share, double ref) {
    return ref > 0 ? fmt::format("{} ({:.2f})", Share(share), share / ref)
                   : fmt::format("{} (-)", Share(share));
  };
  for (int c = 0; c < kCoarseClassCount; ++c) {
    out += fmt::format("| {} |", CoarseShortName(static_cast<ViolenceClass>(c)));
    for (const auto& d : sweep.distributions) out += " " + cell(d[c], base[c]) + " |";
    if (reference) out += " " + cell((*reference)[c], base[c]) + " |";
    out += "\n";
  }
  out += fmt::format("\nParenthesized values are ratios to s={}.\n", sweep.batch_sizes.front());
  if (!sweep.distances.empty()) {
    out += "\n| size | L1 distance | usable |\n|---|---|---|\n";
    for (std::size_t i = 0; i < sweep.batch_sizes.size(); ++i) {
      out += fmt::format("| {} | {:.4f} | {} |\n", sweep.batch_sizes[i], sweep.distances[i],
                         i < sweep.usable.size() && !sweep.usable[i] ? "no" : "yes");
    }
  }
  if (sweep.chosen_size) out += fmt::format("\nSelected batch size: {}\n", *sweep.chosen_size);
  return out;
}

std::string RenderSweepJson(const SweepResult& sweep,
                            std::optional<std::vector<double>> reference) {
  nlohmann::ordered_json doc;
  doc["batch_sizes"] = sweep.batch_sizes;
  doc["classes"] = {"Non.", "Expl.", "Impl."};
  doc["distributions"] = sweep.distributions;
  if (!sweep.distributions.empty()) {
    std::vector<std::vector<double>> ratios;
    for (const auto& d : sweep.distributions) {
      auto r = RatiosTo(d, sweep.distributions.front());
      for (double& x : r) {
        if (std::isnan(x)) x = 0;
      }
      ratios.push_back(r);
    }
    doc["ratio_to_first"] = ratios;
  }
  doc["usable"] = sweep.usable;
  doc["failure_share"] = sweep.failure_share;
  if (reference) doc["reference"] = *reference;
  doc["distance_metric"] = "L1";
  doc["distances"] = sweep.distances;
  doc["chosen_size"] = sweep.chosen_size ? nlohmann::ordered_json(*sweep.chosen_size)
                                         : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json agreement = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sweep.agreement.size(); ++i) {
    for (const auto& r : sweep.agreement[i]) {
      agreement.push_back({{"batch_size", sweep.batch_sizes[i]},
                           {"human", r.truth_name},
                           {"kappa", r.kappa},
                           {"f1_weighted", r.f1_weighted},
                           {"f1_macro", r.f1_macro},
                           {"n", r.n}});
    }
  }
  doc["agreement"] = std::move(agreement);
  return doc.dump(2);
}

}  // namespace annotkit
