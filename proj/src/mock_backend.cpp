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

#include "annotkit/mock_backend.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "annotkit/hash.hpp"

namespace annotkit {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

double SensitivityDial::KeepFraction(std::size_t batch_size) const {
  if (auto it = keep_by_size.find(batch_size); it != keep_by_size.end()) return it->second;
  if (half_size > 0) return half_size / (half_size + static_cast<double>(batch_size));
  return 1.0;
}

double Salience(std::string_view text) {
  // Top 53 bits -> [0, 1).
  return static_cast<double>(Fnv1a64(text) >> 11) * 0x1.0p-53;
}

std::vector<std::string> SplitUserMessage(std::string_view user_message) {
  std::vector<std::string> texts;
  std::size_t pos = 0;
  while (pos <= user_message.size()) {
    auto nl = user_message.find('\n', pos);
    std::string_view line = user_message.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? user_message.size() + 1 : nl + 1;
    const std::string prefix = fmt::format("Post {}: ", texts.size() + 1);
    if (line.substr(0, prefix.size()) == prefix) {
      texts.emplace_back(line.substr(prefix.size()));
    } else if (!texts.empty()) {
      texts.back() += " ";
      texts.back() += line;
    }
  }
  return texts;
}

std::vector<LexiconRule> DefaultLexicon() {
  auto code = [](std::string_view c) { return LabelFromCode(c); };
  return {
      {"kill you", code("EV-D")},
      {"break your", code("EV-D")},
      {"punch him", code("EV-D")},
      {"should all be shot", code("EV-G")},
      {"deserve to die", code("EV-G")},
      {"should be beaten", code("EV-G")},
      {"kill myself", code("EV-S")},
      {"hurt myself", code("EV-S")},
      {"walk off a short pier", code("IV-D")},
      {"he had it coming", code("IV-D")},
      {"get what they deserve", code("IV-G")},
      {"time for a cleanup", code("IV-G")},
      {"better off without me", code("IV-S")},
      {"end it all", code("IV-S")},
  };
}

std::vector<LexiconRule> LoadLexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read lexicon " + path.string());
  std::vector<LexiconRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab + 1 >= line.size()) {
      throw ParseError(fmt::format("{}:{}: expected '<CODE>\\t<term>'", path.string(), line_no));
    }
    rules.push_back({line.substr(tab + 1), LabelFromCode(line.substr(0, tab))});
  }
  return rules;
}

MockBackend::MockBackend(MockOptions options) : options_(std::move(options)) {
  for (auto& rule : options_.lexicon) rule.term = Lower(rule.term);
  for (auto& term : options_.poison_terms) term = Lower(term);
}

Label MockBackend::Classify(std::string_view text, int ordinal, std::size_t batch_size) const {
  const std::string lower = Lower(text);
  for (const auto& rule : options_.lexicon) {
    if (lower.find(rule.term) == std::string::npos) continue;
    if (!rule.label.violent() || !options_.dial) return rule.label;
    double keep = options_.dial->KeepFraction(batch_size);
    if (options_.dial->position_decay > 0 && batch_size > 1) {
      keep *= 1.0 - options_.dial->position_decay * (ordinal - 1) /
                        static_cast<double>(batch_size - 1);
    }
    return Salience(text) < keep ? rule.label : Label();
  }
  return Label();
}

Completion MockBackend::Complete(const ChatRequest& request) {
  const std::vector<std::string> texts = SplitUserMessage(request.user_message);

  bool corrupt = false;
  if (options_.corruption_rate > 0) {
    const std::uint64_t h = Fnv1a64(request.user_message, kFnvOffset ^ options_.corruption_seed);
    corrupt = static_cast<double>(h >> 11) * 0x1.0p-53 < options_.corruption_rate;
  }
  if (!options_.poison_terms.empty()) {
    const std::string lower = Lower(request.user_message);
    for (const auto& term : options_.poison_terms) {
      if (lower.find(term) != std::string::npos) corrupt = true;
    }
  }
  if (corrupt) {
    // Drops the last post, which every parser must reject.
    std::string body = request.structured_output ? "{" : "";
    for (std::size_t i = 0; i + 1 < texts.size(); ++i) {
      body += request.structured_output
                  ? fmt::format("{}\"{}\": {{\"violence\": \"non-violent\"}}", i ? ", " : "", i + 1)
                  : fmt::format("Post {}: non-violent\n", i + 1);
    }
    if (request.structured_output) body += texts.size() <= 1 ? "\"oops\": 1}" : "}";
    if (!request.structured_output && texts.size() <= 1) body = "I cannot help with that.";
    return {body, std::nullopt};
  }

  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  std::string plain;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const int ordinal = static_cast<int>(i + 1);
    const Label label = Classify(texts[i], ordinal, texts.size());
    std::string reason;
    if (options_.echo_text_as_reason) {
      reason = texts[i];
    } else if (label.violent()) {
      const std::string lower = Lower(texts[i]);
      for (const auto& rule : options_.lexicon) {
        if (lower.find(rule.term) != std::string::npos) {
          reason = fmt::format("most important words: '{}'", rule.term);
          break;
        }
      }
    } else {
      reason = "no violent terms";
    }
    if (request.structured_output) {
      nlohmann::ordered_json entry;
      entry["reason"] = reason;
      entry["violence"] = std::string(ViolenceName(label.violence()));
      if (label.violent()) entry["direction"] = std::string(DirectionName(label.direction()));
      doc[std::to_string(ordinal)] = std::move(entry);
    } else {
      plain += fmt::format("Post {}: {}", ordinal, ViolenceName(label.violence()));
      if (label.violent()) plain += fmt::format(", {}", DirectionName(label.direction()));
      plain += fmt::format(" -- {}\n", reason);
    }
  }
  return {request.structured_output ? doc.dump() : plain, std::nullopt};
}

}  // namespace annotkit
