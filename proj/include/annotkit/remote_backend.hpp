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

#ifndef ANNOTKIT_REMOTE_BACKEND_HPP_
#define ANNOTKIT_REMOTE_BACKEND_HPP_

#include <string>

#include "annotkit/backend.hpp"

namespace annotkit {

struct Endpoint {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;
};

// "http[s]://host[:port][/path]". Throws Error(kInvalidArgument).
Endpoint ParseEndpoint(const std::string& url);

// Request body sent to a chat-completion endpoint.
std::string BuildRequestBody(const ChatRequest& request);

// Extracts choices[0].message.content and usage from a response body.
// Throws Error(kBackendFatal) on an unexpected shape.
Completion ParseCompletionBody(const std::string& body);

// HTTP client for an OpenAI-style chat-completion endpoint. The bearer
// token is read from the environment variable named by config.api_key_env.
class RemoteBackend : public Backend {
 public:
  // Throws Error(kBackendAuth) if the credential variable is unset or empty,
  // Error(kInvalidArgument) for a malformed endpoint.
  explicit RemoteBackend(const BackendConfig& config);

  Completion Complete(const ChatRequest& request) override;

 private:
  BackendConfig config_;
  Endpoint endpoint_;
  std::string api_key_;
};

}  // namespace annotkit

#endif  // ANNOTKIT_REMOTE_BACKEND_HPP_
