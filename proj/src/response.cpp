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

#include "annotkit/response.hpp"

#include <charconv>
#include <map>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "annotkit/errors.hpp"

namespace annotkit {

using nlohmann::json;

namespace {

struct RawLabel {
  Label label;
  std::optional<std::string> reason;
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<int> ParseOrdinal(std::string_view s) {
  s = Trim(s);
  if (s.size() > 5 && (s.substr(0, 5) == "Post " || s.substr(0, 5) == "post ")) s.remove_prefix(5);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// "explicit, directed" / "EV-D" / "non-violent"
Label LabelFromPhrase(std::string_view phrase) {
  phrase = Trim(phrase);
  if (auto code = TryLabelFromCode(phrase)) return *code;
  auto comma = phrase.find(',');
  if (comma == std::string_view::npos) return ParseLabel(phrase, "");
  return ParseLabel(phrase.substr(0, comma), phrase.substr(comma + 1));
}

RawLabel LabelFromJson(const json& value) {
  if (value.is_string()) return {LabelFromPhrase(value.get<std::string>()), std::nullopt};
  if (!value.is_object()) throw ParseError("label entry is neither an object nor a string");
  auto text_field = [&](const char* key) -> std::string {
    auto it = value.find(key);
    if (it == value.end() || it->is_null()) return {};
    if (!it->is_string()) throw ParseError(fmt::format("field '{}' is not a string", key));
    return it->get<std::string>();
  };
  std::string violence = text_field("violence");
  if (violence.empty() && value.contains("code")) {
    return {LabelFromCode(text_field("code")), std::nullopt};
  }
  RawLabel out{ParseLabel(violence, text_field("direction")), std::nullopt};
  if (auto it = value.find("reason"); it != value.end() && it->is_string()) {
    out.reason = it->get<std::string>();
  }
  return out;
}

std::map<int, RawLabel> ParseStructured(std::string_view raw, const BatchRequest& batch) {
  // Tolerate a fenced code block around the object.
  std::string_view body = Trim(raw);
  if (auto open = body.find('{'), close = body.rfind('}');
      open != std::string_view::npos && close != std::string_view::npos && close > open) {
    body = body.substr(open, close - open + 1);
  }
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ParseError(fmt::format("batch {}: response is not a JSON object", batch.batch_id));
  }
  // {"posts": {...}} and similar single-member wrappers.
  if (doc.size() == 1 && doc.begin()->is_object() && !ParseOrdinal(doc.begin().key())) {
    json inner = *doc.begin();
    doc = std::move(inner);
  }
  std::map<int, RawLabel> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::optional<int> ordinal = ParseOrdinal(it.key());
    if (!ordinal) {
      // Text-echo key: accept only an exact, unique match.
      const std::string_view key = Trim(it.key());
      for (const auto& p : batch.posts) {
        if (Trim(p.text) == key) {
          if (ordinal) {
            ordinal.reset();
            break;
          }
          ordinal = p.ordinal;
        }
      }
      if (!ordinal) {
        throw AlignmentError(
            fmt::format("batch {}: unrecognized key '{}'", batch.batch_id, it.key()));
      }
    }
    RawLabel label;
    try {
      label = LabelFromJson(it.value());
    } catch (const Error& e) {
      throw ParseError(fmt::format("batch {}: post {}: {}", batch.batch_id, *ordinal, e.what()));
    }
    if (!out.emplace(*ordinal, std::move(label)).second) {
      throw AlignmentError(fmt::format("batch {}: duplicate ordinal {}", batch.batch_id, *ordinal));
    }
  }
  return out;
}

std::map<int, RawLabel> ParsePlain(std::string_view raw, const BatchRequest& batch) {
  std::map<int, RawLabel> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto nl = raw.find('\n', pos);
    std::string_view line = Trim(raw.substr(pos, nl == std::string_view::npos ? raw.npos : nl - pos));
    pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    if (line.size() < 5 || (line.substr(0, 5) != "Post " && line.substr(0, 5) != "post ")) {
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    auto ordinal = ParseOrdinal(line.substr(5, colon - 5));
    if (!ordinal) continue;
    std::string_view rest = Trim(line.substr(colon + 1));
    std::optional<std::string> reason;
    for (std::string_view sep : {"—", " -- ", " - "}) {
      if (auto at = rest.find(sep); at != std::string_view::npos) {
        reason = std::string(Trim(rest.substr(at + sep.size())));
        rest = Trim(rest.substr(0, at));
        break;
      }
    }
    RawLabel label;
    try {
      label = {LabelFromPhrase(rest), std::move(reason)};
    } catch (const Error& e) {
      throw ParseError(fmt::format("batch {}: post {}: {}", batch.batch_id, *ordinal, e.what()));
    }
    if (!out.emplace(*ordinal, std::move(label)).second) {
      throw AlignmentError(fmt::format("batch {}: duplicate ordinal {}", batch.batch_id, *ordinal));
    }
  }
  return out;
}

}  // namespace

std::vector<Annotation> ParseResponse(std::string_view raw, const BatchRequest& batch,
                                      ResponseMode mode, std::string_view annotator_id) {
  std::map<int, RawLabel> labels =
      mode == ResponseMode::kStructured ? ParseStructured(raw, batch) : ParsePlain(raw, batch);

  const int n = static_cast<int>(batch.posts.size());
  std::vector<int> missing, extra;
  for (int i = 1; i <= n; ++i) {
    if (!labels.contains(i)) missing.push_back(i);
  }
  for (const auto& [ordinal, _] : labels) {
    if (ordinal < 1 || ordinal > n) extra.push_back(ordinal);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = fmt::format("batch {}:", batch.batch_id);
    if (!missing.empty()) msg += fmt::format(" missing ordinal(s) {}", fmt::join(missing, ","));
    if (!extra.empty()) msg += fmt::format(" extra ordinal(s) {}", fmt::join(extra, ","));
    throw AlignmentError(msg);
  }

  std::vector<Annotation> out;
  out.reserve(batch.posts.size());
  for (const auto& p : batch.posts) {
    RawLabel& rl = labels.at(p.ordinal);
    out.push_back({p.post_id, std::string(annotator_id), rl.label, std::move(rl.reason),
                   batch.batch_id, p.ordinal});
  }
  return out;
}

}  // namespace annotkit
