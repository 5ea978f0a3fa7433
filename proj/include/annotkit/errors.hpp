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

#ifndef ANNOTKIT_ERRORS_HPP_
#define ANNOTKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace annotkit {

// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kIo,
  kParse,
  kAlignment,
  kBackendTransient,
  kBackendAuth,
  kBackendFatal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error InvalidArgument(const std::string& what) {
  return Error(ErrorKind::kInvalidArgument, what);
}
inline Error IoError(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}
inline Error ParseError(const std::string& what) {
  return Error(ErrorKind::kParse, what);
}
inline Error AlignmentError(const std::string& what) {
  return Error(ErrorKind::kAlignment, what);
}

}  // namespace annotkit

#endif  // ANNOTKIT_ERRORS_HPP_
