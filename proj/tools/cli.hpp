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

#ifndef ANNOTKIT_TOOLS_CLI_HPP_
#define ANNOTKIT_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace annotkit::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitBackend = 3;
inline constexpr int kExitPartial = 4;

// Runs the command line (args excludes the program name). Reports go to
// files under --out and a short summary to `out`; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annotkit::cli

#endif  // ANNOTKIT_TOOLS_CLI_HPP_
