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

#include "annotkit/random.hpp"

#include <limits>

namespace annotkit {

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw > limit);
  return draw % bound;
}

}  // namespace annotkit
