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

#ifndef ANNOTKIT_CSV_HPP_
#define ANNOTKIT_CSV_HPP_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace annotkit::csv {

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Returns std::nullopt at end of input.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<std::vector<std::string>> Next();

  // 1-based physical line where the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Quotes the field only when it needs quoting.
std::string Escape(std::string_view field);

std::string JoinRow(const std::vector<std::string>& fields);

}  // namespace annotkit::csv

#endif  // ANNOTKIT_CSV_HPP_
