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

#include "annotkit/remote_backend.hpp"

#include <cstdlib>
#include <regex>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

namespace annotkit {

using nlohmann::json;

Endpoint ParseEndpoint(const std::string& url) {
  static const std::regex re(R"(^(https?)://([A-Za-z0-9.\-]+|\[[0-9A-Fa-f:]+\])(?::(\d{1,5}))?(/[^\s]*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) {
    throw InvalidArgument(fmt::format("malformed endpoint '{}'", url));
  }
  Endpoint ep;
  ep.scheme = m[1].str();
  ep.host = m[2].str();
  ep.port = m[3].matched ? std::stoi(m[3].str()) : (ep.scheme == "https" ? 443 : 80);
  if (ep.port <= 0 || ep.port > 65535) {
    throw InvalidArgument(fmt::format("endpoint port out of range in '{}'", url));
  }
  ep.path = m[4].matched ? m[4].str() : "/";
  return ep;
}

std::string BuildRequestBody(const ChatRequest& request) {
  json body = {{"model", request.model},
               {"temperature", request.temperature},
               {"messages",
                {{{"role", "system"}, {"content", request.system_message}},
                 {{"role", "user"}, {"content", request.user_message}}}}};
  if (request.structured_output) body["response_format"] = {{"type", "json_object"}};
  return body.dump();
}

Completion ParseCompletionBody(const std::string& body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorKind::kBackendFatal, "completion body is not JSON");
  try {
    Completion c;
    c.text = doc.at("choices").at(0).at("message").at("content").get<std::string>();
    if (auto it = doc.find("usage"); it != doc.end() && it->is_object()) {
      c.usage = TokenUsage{it->value("prompt_tokens", std::size_t{0}),
                           it->value("completion_tokens", std::size_t{0})};
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kBackendFatal, fmt::format("unexpected completion body: {}", e.what()));
  }
}

RemoteBackend::RemoteBackend(const BackendConfig& config)
    : config_(config), endpoint_(ParseEndpoint(config.endpoint)) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (endpoint_.scheme == "https") {
    throw InvalidArgument("this build has no TLS support; https endpoints are unavailable");
  }
#endif
  const char* key = std::getenv(config.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorKind::kBackendAuth,
                fmt::format("credential variable {} is not set", config.api_key_env));
  }
  api_key_ = key;
}

Completion RemoteBackend::Complete(const ChatRequest& request) {
  httplib::Client client(fmt::format("{}://{}:{}", endpoint_.scheme, endpoint_.host, endpoint_.port));
  client.set_connection_timeout(config_.request_timeout);
  client.set_read_timeout(config_.request_timeout);
  client.set_write_timeout(config_.request_timeout);
  client.set_bearer_token_auth(api_key_);

  auto res = client.Post(endpoint_.path, BuildRequestBody(request), "application/json");
  if (!res) {
    throw Error(ErrorKind::kBackendTransient,
                fmt::format("batch {}: transport error: {}", request.batch_id,
                            httplib::to_string(res.error())));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw Error(ErrorKind::kBackendAuth,
                fmt::format("batch {}: authentication failed (HTTP {})", request.batch_id, status));
  }
  if (status == 408 || status == 429 || status >= 500) {
    throw Error(ErrorKind::kBackendTransient,
                fmt::format("batch {}: HTTP {}", request.batch_id, status));
  }
  if (status != 200) {
    throw Error(ErrorKind::kBackendFatal,
                fmt::format("batch {}: HTTP {}: {}", request.batch_id, status, res->body));
  }
  return ParseCompletionBody(res->body);
}

}  // namespace annotkit
