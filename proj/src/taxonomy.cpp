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

#include "annotkit/taxonomy.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "annotkit/errors.hpp"

namespace annotkit {

namespace {

constexpr std::array<std::string_view, kFullClassCount> kCodes = {
    "NV", "EV-D", "EV-G", "EV-S", "IV-D", "IV-G", "IV-S"};

std::string Normalize(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Label::Label(ViolenceClass violence, Directedness direction)
    : violence_(violence), direction_(direction) {
  const bool nv = violence == ViolenceClass::kNonViolent;
  const bool na = direction == Directedness::kNotApplicable;
  if (nv != na) {
    throw InvalidArgument(fmt::format("invalid label ({}, {})", ViolenceName(violence),
                                      DirectionName(direction)));
  }
}

int Label::index() const {
  if (!violent()) return 0;
  const int base = violence_ == ViolenceClass::kExplicit ? 1 : 4;
  return base + static_cast<int>(direction_) - 1;
}

Label Label::FromIndex(int index) {
  if (index < 0 || index >= kFullClassCount) {
    throw InvalidArgument(fmt::format("label index {} out of range", index));
  }
  if (index == 0) return Label();
  const auto v = index <= 3 ? ViolenceClass::kExplicit : ViolenceClass::kImplicit;
  const int d = (index - 1) % 3 + 1;
  return Label(v, static_cast<Directedness>(d));
}

const std::array<Label, kFullClassCount>& AllLabels() {
  static const std::array<Label, kFullClassCount> labels = [] {
    std::array<Label, kFullClassCount> out;
    for (int i = 0; i < kFullClassCount; ++i) out[i] = Label::FromIndex(i);
    return out;
  }();
  return labels;
}

Label ParseLabel(std::string_view violence_text, std::string_view direction_text) {
  const std::string v = Normalize(violence_text);
  ViolenceClass violence;
  if (v == "non-violent" || v == "none") {
    return Label();
  } else if (v == "explicit") {
    violence = ViolenceClass::kExplicit;
  } else if (v == "implicit") {
    violence = ViolenceClass::kImplicit;
  } else {
    throw ParseError(fmt::format("unrecognized violence class '{}'", violence_text));
  }
  const std::string d = Normalize(direction_text);
  Directedness direction;
  if (d == "directed") {
    direction = Directedness::kDirected;
  } else if (d == "general" || d == "undirected") {
    direction = Directedness::kGeneral;
  } else if (d == "self-directed" || d == "self") {
    direction = Directedness::kSelfDirected;
  } else {
    throw ParseError(fmt::format("unrecognized direction '{}' for {} violence",
                                 direction_text, v));
  }
  return Label(violence, direction);
}

std::string LabelCode(Label label) { return std::string(kCodes[label.index()]); }

std::optional<Label> TryLabelFromCode(std::string_view code) {
  std::string c(code);
  std::transform(c.begin(), c.end(), c.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (int i = 0; i < kFullClassCount; ++i) {
    if (kCodes[i] == c) return Label::FromIndex(i);
  }
  return std::nullopt;
}

Label LabelFromCode(std::string_view code) {
  if (auto l = TryLabelFromCode(code)) return *l;
  throw ParseError(fmt::format("unknown label code '{}'", code));
}

ViolenceClass Coarse(Label label) { return label.violence(); }

std::string_view ViolenceName(ViolenceClass v) {
  switch (v) {
    case ViolenceClass::kNonViolent: return "non-violent";
    case ViolenceClass::kExplicit: return "explicit";
    case ViolenceClass::kImplicit: return "implicit";
  }
  return "?";
}

std::string_view DirectionName(Directedness d) {
  switch (d) {
    case Directedness::kNotApplicable: return "n/a";
    case Directedness::kDirected: return "directed";
    case Directedness::kGeneral: return "general";
    case Directedness::kSelfDirected: return "self-directed";
  }
  return "?";
}

std::string_view CoarseShortName(ViolenceClass v) {
  switch (v) {
    case ViolenceClass::kNonViolent: return "Non.";
    case ViolenceClass::kExplicit: return "Expl.";
    case ViolenceClass::kImplicit: return "Impl.";
  }
  return "?";
}

std::array<double, kCoarseClassCount> CoarseShares(std::span<const Label> labels) {
  if (labels.empty()) throw InvalidArgument("class shares of an empty label set");
  std::array<std::size_t, kCoarseClassCount> counts{};
  for (Label l : labels) ++counts[static_cast<int>(Coarse(l))];
  std::array<double, kCoarseClassCount> shares{};
  for (int c = 0; c < kCoarseClassCount; ++c) {
    shares[c] = static_cast<double>(counts[c]) / static_cast<double>(labels.size());
  }
  return shares;
}

}  // namespace annotkit
