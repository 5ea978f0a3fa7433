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

#ifndef ANNOTKIT_TOKENS_HPP_
#define ANNOTKIT_TOKENS_HPP_

#include <cstddef>
#include <functional>
#include <string_view>

namespace annotkit {

// Maps text to an estimated token count. Backends tokenize differently, so
// this is pluggable.
using TokenEstimator = std::function<std::size_t(std::string_view)>;

// ceil(code points / 4), the usual rough figure for English text.
std::size_t QuarterCharEstimate(std::string_view text);

std::size_t CountCodePoints(std::string_view utf8);

inline TokenEstimator DefaultTokenEstimator() { return &QuarterCharEstimate; }

}  // namespace annotkit

#endif  // ANNOTKIT_TOKENS_HPP_
