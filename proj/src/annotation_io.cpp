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

#include "annotkit/annotation_io.hpp"

#include <fstream>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/csv.hpp"
#include "annotkit/errors.hpp"

namespace annotkit {

using nlohmann::ordered_json;

std::string AnnotationToJsonLine(const Annotation& a) {
  ordered_json rec;
  rec["post_id"] = a.post_id;
  rec["annotator_id"] = a.annotator_id;
  rec["violence"] = std::string(ViolenceName(a.label.violence()));
  rec["direction"] = std::string(DirectionName(a.label.direction()));
  rec["code"] = LabelCode(a.label);
  rec["reason"] = a.reason ? ordered_json(*a.reason) : ordered_json(nullptr);
  rec["batch_id"] = a.batch_id;
  rec["ordinal"] = a.ordinal;
  return rec.dump();
}

void WriteAnnotationsJsonl(std::span<const Annotation> annotations, std::ostream& out) {
  for (const auto& a : annotations) out << AnnotationToJsonLine(a) << '\n';
}

void WriteAnnotationsJsonl(std::span<const Annotation> annotations,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteAnnotationsJsonl(annotations, out);
}

namespace {

Label LabelFromFields(const std::string& code, const std::string& violence,
                      const std::string& direction) {
  if (!code.empty()) return LabelFromCode(code);
  return ParseLabel(violence, direction == "n/a" ? "" : direction);
}

}  // namespace

std::vector<Annotation> ReadAnnotations(const std::filesystem::path& path,
                                        const std::string& default_annotator) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read annotation file " + path.string());
  std::vector<Annotation> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto add = [&](Annotation a, std::size_t line) {
    if (a.post_id.empty()) {
      throw ParseError(fmt::format("{}:{}: missing post_id", path.string(), line));
    }
    if (a.annotator_id.empty()) a.annotator_id = default_annotator;
    if (!seen.emplace(a.post_id, a.annotator_id).second) {
      throw ParseError(fmt::format("{}:{}: duplicate annotation of post '{}' by '{}'",
                                   path.string(), line, a.post_id, a.annotator_id));
    }
    out.push_back(std::move(a));
  };

  std::string ext = path.extension().string();
  if (ext == ".csv" || ext == ".CSV") {
    csv::Reader reader(in);
    auto header = reader.Next();
    if (!header) return out;
    auto col = [&](std::string_view name) -> int {
      for (std::size_t i = 0; i < header->size(); ++i) {
        if ((*header)[i] == name) return static_cast<int>(i);
      }
      return -1;
    };
    const int c_post = col("post_id"), c_ann = col("annotator_id"), c_code = col("code"),
              c_vio = col("violence"), c_dir = col("direction"), c_reason = col("reason");
    if (c_post < 0 || (c_code < 0 && c_vio < 0)) {
      throw ParseError(path.string() + ": CSV header needs post_id and code or violence");
    }
    while (auto row = reader.Next()) {
      if (row->size() == 1 && (*row)[0].empty()) continue;
      auto get = [&](int c) { return c >= 0 && c < static_cast<int>(row->size()) ? (*row)[c] : std::string(); };
      Annotation a;
      a.post_id = get(c_post);
      a.annotator_id = get(c_ann);
      try {
        a.label = LabelFromFields(get(c_code), get(c_vio), get(c_dir));
      } catch (const Error& e) {
        throw ParseError(fmt::format("{}:{}: {}", path.string(), reader.line(), e.what()));
      }
      if (c_reason >= 0 && !get(c_reason).empty()) a.reason = get(c_reason);
      add(std::move(a), reader.line());
    }
    return out;
  }

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw ParseError(fmt::format("{}:{}: malformed JSON record", path.string(), line_no));
    }
    auto str = [&](const char* key) -> std::string {
      auto it = rec.find(key);
      return it != rec.end() && it->is_string() ? it->get<std::string>() : std::string();
    };
    Annotation a;
    a.post_id = str("post_id");
    a.annotator_id = str("annotator_id");
    try {
      a.label = LabelFromFields(str("code"), str("violence"), str("direction"));
    } catch (const Error& e) {
      throw ParseError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
    if (auto it = rec.find("reason"); it != rec.end() && it->is_string()) {
      a.reason = it->get<std::string>();
    }
    a.batch_id = str("batch_id");
    if (auto it = rec.find("ordinal"); it != rec.end() && it->is_number_integer()) {
      a.ordinal = it->get<int>();
    }
    add(std::move(a), line_no);
  }
  return out;
}

void WriteFailuresJsonl(std::span<const BatchFailure> failures, std::ostream& out) {
  for (const auto& f : failures) {
    ordered_json rec;
    rec["batch_id"] = f.batch_id;
    rec["error"] = f.error;
    rec["post_ids"] = f.post_ids;
    out << rec.dump() << '\n';
  }
}

std::string RunSummaryJson(const AnnotationRun& run) {
  ordered_json doc;
  doc["run_id"] = run.run_id;
  doc["template_id"] = run.template_id;
  doc["model"] = run.config.model_name;
  doc["temperature"] = run.config.temperature;
  doc["structured_output"] = run.config.structured_output;
  doc["batch_size"] = run.batch_size;
  doc["input_posts"] = run.input_posts;
  doc["annotated_posts"] = run.annotations.size();
  doc["failed_posts"] = run.failed_posts();
  doc["failed_batches"] = run.failures.size();
  const CostLedger& l = run.ledger;
  ordered_json ledger;
  ledger["usage_source"] = std::string(UsageSourceName(l.usage_source));
  ledger["prompt_tokens_per_batch"] = l.prompt_tokens_per_batch;
  ledger["post_tokens_total"] = l.post_tokens_total;
  ledger["output_tokens_total"] = l.output_tokens_total;
  ledger["batches_sent"] = l.batches_sent;
  ledger["price_per_1000_tokens"] = l.price_per_1000_tokens;
  ledger["total_cost"] = l.total_cost;
  ledger["cost_per_annotated_post"] =
      run.annotations.empty() ? 0.0 : l.total_cost / static_cast<double>(run.annotations.size());
  doc["ledger"] = std::move(ledger);
  ordered_json retries = ordered_json::array();
  for (const auto& r : run.retries) {
    retries.push_back({{"batch_id", r.batch_id}, {"attempt", r.attempt}, {"error", r.error}});
  }
  doc["retries"] = std::move(retries);
  return doc.dump(2);
}

}  // namespace annotkit
