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

#ifndef ANNOTKIT_MOCK_BACKEND_HPP_
#define ANNOTKIT_MOCK_BACKEND_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "annotkit/backend.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

struct LexiconRule {
  std::string term;  // matched case-insensitively as a substring
  Label label;
};

// Batch-size-dependent sensitivity. A post that hits a violent rule keeps
// its violent label iff its salience (a hash of the text, uniform in [0, 1))
// is below KeepFraction(batch_size). With a non-increasing keep fraction the
// violent posts at a larger size are a subset of those at a smaller size.
struct SensitivityDial {
  std::map<std::size_t, double> keep_by_size;  // exact sizes win
  double half_size = 0;  // if > 0: keep = half_size / (half_size + size)
  // Later ordinals keep less: threshold *= 1 - position_decay * (i-1)/(n-1).
  double position_decay = 0;

  double KeepFraction(std::size_t batch_size) const;
};

struct MockOptions {
  std::vector<LexiconRule> lexicon;  // first match wins; no match -> NV
  std::optional<SensitivityDial> dial;
  bool echo_text_as_reason = false;
  // Share of requests answered with a malformed body, decided by a hash of
  // the user message so the same request always gets the same treatment.
  double corruption_rate = 0;
  std::uint64_t corruption_seed = 0;
  // Any request containing one of these (case-insensitive) is malformed.
  std::vector<std::string> poison_terms;
};

// Deterministic keyword-rule backend. Reads the "Post i: ..." lines of the
// user message and answers in the requested response mode.
class MockBackend : public Backend {
 public:
  explicit MockBackend(MockOptions options);

  Completion Complete(const ChatRequest& request) override;

  // Label the mock gives `text` at `ordinal` of `batch_size`.
  Label Classify(std::string_view text, int ordinal, std::size_t batch_size) const;

  const MockOptions& options() const { return options_; }

 private:
  MockOptions options_;
};

std::vector<LexiconRule> DefaultLexicon();

// "<CODE>\t<term>" lines; '#' starts a comment.
std::vector<LexiconRule> LoadLexicon(const std::filesystem::path& path);

// Salience in [0, 1) derived from the text.
double Salience(std::string_view text);

// Splits a rendered user message back into post texts (ordinal order).
std::vector<std::string> SplitUserMessage(std::string_view user_message);

}  // namespace annotkit

#endif  // ANNOTKIT_MOCK_BACKEND_HPP_
