// Copyright 2026 The relayout Authors
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


#include "relayout/translate.hpp"

#include <cstdlib>
#include <regex>

#include "relayout/errors.hpp"

#include <httplib.h>
#include <json.hpp>

namespace relayout {

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  static const std::regex kUrl(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)");
  if (!std::regex_match(config_.endpoint, kUrl)) {
    throw ConfigError("invalid backend endpoint: '" + config_.endpoint + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (config_.endpoint.rfind("https://", 0) == 0) {
    throw ConfigError("https endpoints need a build with OpenSSL");
  }
#endif
}

std::vector<std::string> HttpBackend::translate(const TranslationRequest& request) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  std::regex_match(config_.endpoint, m, kUrl);
  const std::string origin = m[1].str();
  const std::string path = m[2].matched ? m[2].str() : "/";

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  nlohmann::json body;
  body["model"] = config_.model;
  body["temperature"] = 0;
  body["messages"] = nlohmann::json::array();
  if (!config_.system_role.empty()) {
    body["messages"].push_back({{"role", "system"}, {"content", config_.system_role}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", request.prompt}});

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw BackendError(BackendError::Code::kUnavailable,
                       "request to " + config_.endpoint + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw BackendError(BackendError::Code::kUnavailable, "backend answered HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw BackendError(BackendError::Code::kProtocol, "backend answered HTTP " + std::to_string(res->status));
  }
  std::string content;
  try {
    const auto reply = nlohmann::json::parse(res->body);
    const auto& choice = reply.at("choices").at(0);
    if (choice.contains("message")) {
      content = choice.at("message").at("content").get<std::string>();
    } else {
      content = choice.at("text").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendError::Code::kProtocol, std::string("unreadable completion: ") + e.what());
  }
  return parse_numbered_segments(content, request.texts.size());
}

}  // namespace relayout
