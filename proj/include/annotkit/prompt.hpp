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

#ifndef ANNOTKIT_PROMPT_HPP_
#define ANNOTKIT_PROMPT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annotkit/corpus.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

enum class ResponseMode { kPlain, kStructured };

std::string_view ResponseModeName(ResponseMode mode);  // "plain" / "structured-object"
ResponseMode ParseResponseMode(std::string_view name);

struct FewShotExample {
  std::string text;
  Label label;
};

// Marker that opens the output-format instruction block a structured-object
// template must carry.
inline constexpr std::string_view kOutputFormatMarker = "Output format:";

struct PromptTemplate {
  std::string template_id;
  std::string system_text;
  ResponseMode response_mode = ResponseMode::kStructured;
  bool requires_reason = true;
  std::vector<FewShotExample> few_shot_examples;

  // Throws Error(kInvalidArgument) on an empty system text or a structured
  // template without an output-format block.
  void Validate() const;
};

// Plain-text template file with a front-matter header:
//
//   ---
//   template_id: final
//   response_mode: structured-object
//   requires_reason: true
//   example: EV-G | <example post text>
//   ---
//   <system text>
PromptTemplate ParseTemplate(std::string_view contents);
PromptTemplate LoadTemplate(const std::filesystem::path& path);
std::string SerializeTemplate(const PromptTemplate& tmpl);

// Shipped prompt variants: "basic", "incel-hint", "give-reason",
// "give-reason-few-examples", "final".
std::vector<std::string> BuiltinTemplateNames();
PromptTemplate BuiltinTemplate(std::string_view name);

// "builtin:<name>" or a file path.
PromptTemplate ResolveTemplate(std::string_view spec);

struct RenderedRequest {
  std::string system_message;
  std::string user_message;
};

// System message: instructions (plus few-shot block, if any) followed by a
// newline and "The posts are:".
std::string RenderSystemMessage(const PromptTemplate& tmpl);

// One "Post i: <text>" line per post, i from 1. Newlines left inside a text
// become single spaces so each post stays on its own line.
std::string RenderUserMessage(std::span<const std::string> texts);

// Throws Error(kInvalidArgument) for an empty batch.
RenderedRequest RenderRequest(const PromptTemplate& tmpl, std::span<const Post> batch);

}  // namespace annotkit

#endif  // ANNOTKIT_PROMPT_HPP_
