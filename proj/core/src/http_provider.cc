// Copyright 2026 The Structview Authors.
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

#include <cstdlib>

#include "json.hpp"
#include "structview/gateway.h"
#include "structview/status.h"

#ifdef STRUCTVIEW_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

namespace structview {

using json = nlohmann::json;

HttpProviderOptions HttpProviderOptionsFromEnv() {
  HttpProviderOptions options;
  if (const char *url = std::getenv("STRUCTVIEW_BASE_URL"); url && *url) {
    options.base_url = url;
  }
  if (const char *key = std::getenv("STRUCTVIEW_API_KEY"); key && *key) {
    options.api_key = key;
  }
  return options;
}

HttpProvider::HttpProvider(HttpProviderOptions options)
    : options_(std::move(options)) {}

ProviderResponse HttpProvider::Complete(const CompletionRequest &request) {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  const json body = {{"model", request.model},
                     {"prompt", request.prompt},
                     {"max_tokens", request.max_tokens},
                     {"temperature", 0}};
  auto res = client.Post(options_.path, headers, body.dump(),
                         "application/json");
  if (!res) {
    throw Error(ErrorCode::kProvider,
                "HTTP request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProvider,
                "HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  ProviderResponse out;
  try {
    const json j = json::parse(res->body);
    const auto &choice = j.at("choices").at(0);
    if (choice.contains("text")) {
      out.completion = choice.at("text").get<std::string>();
    } else {
      out.completion = choice.at("message").at("content").get<std::string>();
    }
    if (j.contains("usage")) {
      const auto &usage = j.at("usage");
      if (usage.contains("prompt_tokens")) {
        out.prompt_tokens = usage.at("prompt_tokens").get<uint64_t>();
      }
      if (usage.contains("completion_tokens")) {
        out.completion_tokens = usage.at("completion_tokens").get<uint64_t>();
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kProvider,
                std::string("malformed provider response: ") + e.what());
  }
  return out;
}

}  // namespace structview
