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

#ifndef ANNOTKIT_TAXONOMY_HPP_
#define ANNOTKIT_TAXONOMY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace annotkit {

enum class ViolenceClass { kNonViolent = 0, kExplicit = 1, kImplicit = 2 };

enum class Directedness { kNotApplicable = 0, kDirected = 1, kGeneral = 2, kSelfDirected = 3 };

// A (violence, direction) pair. Non-violent posts carry no direction and
// violent posts always carry one, so exactly seven values exist.
class Label {
 public:
  // Non-violent label.
  constexpr Label() = default;

  // Throws Error(kInvalidArgument) when the pair breaks the
  // NonViolent <=> NotApplicable rule.
  Label(ViolenceClass violence, Directedness direction);

  static constexpr Label NonViolent() { return Label(); }

  constexpr ViolenceClass violence() const { return violence_; }
  constexpr Directedness direction() const { return direction_; }
  constexpr bool violent() const { return violence_ != ViolenceClass::kNonViolent; }

  // Dense index 0..6 in the canonical code order (NV, EV-D, EV-G, EV-S,
  // IV-D, IV-G, IV-S).
  int index() const;
  static Label FromIndex(int index);

  friend constexpr bool operator==(Label, Label) = default;

 private:
  ViolenceClass violence_ = ViolenceClass::kNonViolent;
  Directedness direction_ = Directedness::kNotApplicable;
};

inline constexpr int kFullClassCount = 7;
inline constexpr int kCoarseClassCount = 3;

const std::array<Label, kFullClassCount>& AllLabels();

// Case-insensitive, trimmed. Throws Error(kParse) on unknown words.
Label ParseLabel(std::string_view violence_text, std::string_view direction_text);

// "NV", "EV-D", ..., "IV-S".
std::string LabelCode(Label label);
Label LabelFromCode(std::string_view code);
std::optional<Label> TryLabelFromCode(std::string_view code);

ViolenceClass Coarse(Label label);

std::string_view ViolenceName(ViolenceClass v);  // "non-violent", "explicit", "implicit"
std::string_view DirectionName(Directedness d);  // "n/a", "directed", "general", "self-directed"
std::string_view CoarseShortName(ViolenceClass v);  // "Non.", "Expl.", "Impl."

// Shares of NonViolent, Explicit, Implicit. Throws on an empty input.
std::array<double, kCoarseClassCount> CoarseShares(std::span<const Label> labels);

// A label assigned to a post by one annotator (human coder or backend run).
struct Annotation {
  std::string post_id;
  std::string annotator_id;
  Label label;
  std::optional<std::string> reason;
  // Placement inside the request that produced it; empty / 0 for humans.
  std::string batch_id;
  int ordinal = 0;
};

}  // namespace annotkit

#endif  // ANNOTKIT_TAXONOMY_HPP_
