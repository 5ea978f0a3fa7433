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

#include "annotkit/prompt.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "annotkit/errors.hpp"

namespace annotkit {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseBool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError(fmt::format("expected a boolean, got '{}'", v));
}

constexpr std::string_view kScheme =
    "You are annotating forum posts for violent language. Assign every post "
    "one violence class:\n"
    "- non-violent: no violent language.\n"
    "- explicit: openly violent language such as threats, wishes of harm or "
    "slurs used with harmful intent.\n"
    "- implicit: violent meaning carried by sarcasm, coded terms, euphemism or "
    "insinuation without overtly hateful words.\n"
    "Every explicit or implicit post also gets a direction:\n"
    "- directed: aimed at a specific individual, inside or outside the forum.\n"
    "- general: aimed at a group of people.\n"
    "- self-directed: aimed at the author.";

constexpr std::string_view kForumHint =
    "The posts come from an online forum of self-described involuntary "
    "celibates (incels). Read them with that community's vocabulary and "
    "in-group slang in mind; coded terms are common and often carry violent "
    "meaning that is not obvious to outsiders.";

constexpr std::string_view kPlainFormat =
    "Answer with exactly one line per post, in the order given:\n"
    "Post <number>: <violence>, <direction>\n"
    "Leave out the direction for non-violent posts.";

constexpr std::string_view kPlainReasonFormat =
    "Answer with exactly one line per post, in the order given:\n"
    "Post <number>: <violence>, <direction> -- <reason>\n"
    "Leave out the direction for non-violent posts. The reason lists the most "
    "important words behind your decision.";

constexpr std::string_view kStructuredFormat =
    "Output format: respond with a single JSON object. Use each post's number "
    "as a key (\"1\", \"2\", ...). Each value is an object whose first field is "
    "\"reason\" (the most important words behind your decision; write it "
    "before deciding), followed by \"violence\" (\"non-violent\", \"explicit\" "
    "or \"implicit\") and \"direction\" (\"directed\", \"general\" or "
    "\"self-directed\"; omit it for non-violent posts). Include every post "
    "exactly once.";

std::vector<FewShotExample> DefaultExamples() {
  using V = ViolenceClass;
  using D = Directedness;
  return {
      {"Spent the whole weekend fixing my bike, feels good to finish something.", Label()},
      {"If I ever see that guy from the gym again I will break his jaw.",
       Label(V::kExplicit, D::kDirected)},
      {"People like them should all be beaten until they learn.",
       Label(V::kExplicit, D::kGeneral)},
      {"Nobody would notice if I just disappeared for good.",
       Label(V::kImplicit, D::kSelfDirected)},
      {"Funny how those types always end up needing a long walk off a short pier.",
       Label(V::kImplicit, D::kGeneral)},
  };
}

PromptTemplate Make(std::string id, std::string text, ResponseMode mode, bool reason,
                    std::vector<FewShotExample> examples = {}) {
  PromptTemplate t{std::move(id), std::move(text), mode, reason, std::move(examples)};
  t.Validate();
  return t;
}

}  // namespace

std::string_view ResponseModeName(ResponseMode mode) {
  return mode == ResponseMode::kPlain ? "plain" : "structured-object";
}

ResponseMode ParseResponseMode(std::string_view name) {
  if (name == "plain") return ResponseMode::kPlain;
  if (name == "structured-object" || name == "structured" || name == "json") {
    return ResponseMode::kStructured;
  }
  throw ParseError(fmt::format("unknown response mode '{}'", name));
}

void PromptTemplate::Validate() const {
  if (Trim(system_text).empty()) {
    throw InvalidArgument(fmt::format("template '{}' has an empty system text", template_id));
  }
  if (response_mode == ResponseMode::kStructured &&
      system_text.find(kOutputFormatMarker) == std::string::npos) {
    throw InvalidArgument(fmt::format(
        "structured template '{}' lacks an '{}' block", template_id, kOutputFormatMarker));
  }
}

PromptTemplate ParseTemplate(std::string_view contents) {
  PromptTemplate t;
  std::string_view rest = contents;
  auto next_line = [&rest]() {
    auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
    return Trim(line);
  };
  if (next_line() != "---") throw ParseError("template must start with a '---' header");
  bool closed = false;
  while (!rest.empty()) {
    std::string_view line = next_line();
    if (line == "---") {
      closed = true;
      break;
    }
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(fmt::format("bad template header line '{}'", line));
    }
    std::string_view key = Trim(line.substr(0, colon));
    std::string_view value = Trim(line.substr(colon + 1));
    if (key == "template_id") {
      t.template_id = std::string(value);
    } else if (key == "response_mode") {
      t.response_mode = ParseResponseMode(value);
    } else if (key == "requires_reason") {
      t.requires_reason = ParseBool(value);
    } else if (key == "example") {
      auto bar = value.find('|');
      if (bar == std::string_view::npos) {
        throw ParseError(fmt::format("example needs '<code> | <text>': '{}'", value));
      }
      t.few_shot_examples.push_back(
          {std::string(Trim(value.substr(bar + 1))), LabelFromCode(Trim(value.substr(0, bar)))});
    } else {
      throw ParseError(fmt::format("unknown template header key '{}'", key));
    }
  }
  if (!closed) throw ParseError("unterminated template header");
  if (t.template_id.empty()) throw ParseError("template header lacks template_id");
  std::string body(rest);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
  t.system_text = std::move(body);
  t.Validate();
  return t;
}

PromptTemplate LoadTemplate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read template " + path.string());
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseTemplate(contents);
}

std::string SerializeTemplate(const PromptTemplate& tmpl) {
  std::string out = "---\n";
  out += fmt::format("template_id: {}\n", tmpl.template_id);
  out += fmt::format("response_mode: {}\n", ResponseModeName(tmpl.response_mode));
  out += fmt::format("requires_reason: {}\n", tmpl.requires_reason ? "true" : "false");
  for (const auto& ex : tmpl.few_shot_examples) {
    out += fmt::format("example: {} | {}\n", LabelCode(ex.label), ex.text);
  }
  out += "---\n";
  out += tmpl.system_text;
  out += "\n";
  return out;
}

std::vector<std::string> BuiltinTemplateNames() {
  return {"basic", "incel-hint", "give-reason", "give-reason-few-examples", "final"};
}

PromptTemplate BuiltinTemplate(std::string_view name) {
  const auto join = [](std::initializer_list<std::string_view> parts) {
    std::string out;
    for (auto p : parts) {
      if (!out.empty()) out += "\n\n";
      out += p;
    }
    return out;
  };
  if (name == "basic") {
    return Make("basic", join({kScheme, kPlainFormat}), ResponseMode::kPlain, false);
  }
  if (name == "incel-hint") {
    return Make("incel-hint", join({kForumHint, kScheme, kPlainFormat}), ResponseMode::kPlain,
                false);
  }
  if (name == "give-reason") {
    return Make("give-reason", join({kForumHint, kScheme, kPlainReasonFormat}),
                ResponseMode::kPlain, true);
  }
  if (name == "give-reason-few-examples") {
    return Make("give-reason-few-examples", join({kForumHint, kScheme, kPlainReasonFormat}),
                ResponseMode::kPlain, true, DefaultExamples());
  }
  if (name == "final") {
    return Make("final", join({kForumHint, kScheme, kStructuredFormat}),
                ResponseMode::kStructured, true, DefaultExamples());
  }
  throw InvalidArgument(fmt::format("unknown builtin template '{}'", name));
}

PromptTemplate ResolveTemplate(std::string_view spec) {
  constexpr std::string_view kPrefix = "builtin:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) {
    return BuiltinTemplate(spec.substr(kPrefix.size()));
  }
  return LoadTemplate(std::filesystem::path(std::string(spec)));
}

std::string RenderSystemMessage(const PromptTemplate& tmpl) {
  std::string out = tmpl.system_text;
  if (!tmpl.few_shot_examples.empty()) {
    out += "\n\nExamples:";
    for (std::size_t i = 0; i < tmpl.few_shot_examples.size(); ++i) {
      const auto& ex = tmpl.few_shot_examples[i];
      out += fmt::format("\nExample {}: {}\nClassification: {}", i + 1, ex.text,
                         ViolenceName(ex.label.violence()));
      if (ex.label.violent()) out += fmt::format(", {}", DirectionName(ex.label.direction()));
    }
  }
  out += "\nThe posts are:";
  return out;
}

std::string RenderUserMessage(std::span<const std::string> texts) {
  std::string out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) out.push_back('\n');
    out += fmt::format("Post {}: ", i + 1);
    for (char c : texts[i]) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  }
  return out;
}

RenderedRequest RenderRequest(const PromptTemplate& tmpl, std::span<const Post> batch) {
  if (batch.empty()) throw InvalidArgument("cannot render an empty batch");
  std::vector<std::string> texts;
  texts.reserve(batch.size());
  for (const Post& p : batch) texts.push_back(p.text);
  return {RenderSystemMessage(tmpl), RenderUserMessage(texts)};
}

}  // namespace annotkit
