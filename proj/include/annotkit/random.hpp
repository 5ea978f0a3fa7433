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

#ifndef ANNOTKIT_RANDOM_HPP_
#define ANNOTKIT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace annotkit {

// Uniform integer in [0, bound) by rejection on top of mt19937_64. The
// standard distributions are implementation-defined, so sampling results
// would differ between standard libraries; this one does not.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// Fisher-Yates shuffle driven by UniformBelow.
template <typename T>
void StableShuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformBelow(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace annotkit

#endif  // ANNOTKIT_RANDOM_HPP_
