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

#ifndef ANNOTKIT_HASH_HPP_
#define ANNOTKIT_HASH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace annotkit {

// 64-bit FNV-1a. Stable across platforms; used for fixture keys, report
// digests and the mock backend's salience score. Not a cryptographic hash.
constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

constexpr std::uint64_t Fnv1a64(std::string_view data,
                                std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string HexDigest(std::uint64_t value);

// "fnv1a64:<16 hex digits>" over the file's bytes.
std::string FileDigest(const std::filesystem::path& path);

}  // namespace annotkit

#endif  // ANNOTKIT_HASH_HPP_
