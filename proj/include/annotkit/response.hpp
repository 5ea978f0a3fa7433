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

#ifndef ANNOTKIT_RESPONSE_HPP_
#define ANNOTKIT_RESPONSE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "annotkit/batching.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

// Aligns a raw completion with the batch's ordinals and returns one
// Annotation per post, in ordinal order.
//
// Structured mode expects one JSON object keyed by ordinal ("1" or 1 inside
// a string key, or an exact post-text echo as a fallback) whose values carry
// "violence", "direction" and an optional "reason". Plain mode reads lines of
// the form "Post i: <violence>, <direction>[ -- reason]" and ignores others.
//
// Any missing, duplicate or extra ordinal, or an unparseable label, throws
// Error(kAlignment) or Error(kParse) for the whole batch.
std::vector<Annotation> ParseResponse(std::string_view raw, const BatchRequest& batch,
                                      ResponseMode mode, std::string_view annotator_id);

}  // namespace annotkit

#endif  // ANNOTKIT_RESPONSE_HPP_
