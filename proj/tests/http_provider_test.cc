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

// Exercises HttpProvider against a local server. The OpenSSL define must
// match the library's so both see the same httplib types.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <thread>

#include <gtest/gtest.h>

#include "json.hpp"
#include "structview/gateway.h"
#include "structview/status.h"

namespace structview {
namespace {

class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server &server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpProviderTest, PostsCompletionRequest) {
  LocalServer local;
  nlohmann::json seen;
  std::string auth;
  local.server().Post("/v1/completions",
                      [&](const httplib::Request &req, httplib::Response &res) {
                        seen = nlohmann::json::parse(req.body);
                        auth = req.get_header_value("Authorization");
                        res.set_content(
                            R"({"choices":[{"text":" Charles III"}],)"
                            R"("usage":{"prompt_tokens":12,"completion_tokens":3}})",
                            "application/json");
                      });
  HttpProviderOptions o;
  o.base_url = local.url();
  o.api_key = "k";
  HttpProvider provider(o);
  CompletionRequest r;
  r.model = "m";
  r.prompt = "Monarch?";
  r.max_tokens = 7;
  const ProviderResponse out = provider.Complete(r);
  EXPECT_EQ(out.completion, " Charles III");
  EXPECT_EQ(out.prompt_tokens, 12u);
  EXPECT_EQ(out.completion_tokens, 3u);
  EXPECT_EQ(seen["model"], "m");
  EXPECT_EQ(seen["prompt"], "Monarch?");
  EXPECT_EQ(seen["max_tokens"], 7);
  EXPECT_EQ(seen["temperature"], 0);
  EXPECT_EQ(auth, "Bearer k");
}

TEST(HttpProviderTest, ChatStyleResponse) {
  LocalServer local;
  local.server().Post("/v1/completions", [](const httplib::Request &,
                                            httplib::Response &res) {
    res.set_content(R"({"choices":[{"message":{"content":"yes"}}]})",
                    "application/json");
  });
  HttpProviderOptions o;
  o.base_url = local.url();
  const ProviderResponse out = HttpProvider(o).Complete({});
  EXPECT_EQ(out.completion, "yes");
  EXPECT_FALSE(out.prompt_tokens.has_value());
}

TEST(HttpProviderTest, ServerErrorsAreProviderErrors) {
  LocalServer local;
  local.server().Post("/v1/completions", [](const httplib::Request &,
                                            httplib::Response &res) {
    res.status = 500;
    res.set_content("boom", "text/plain");
  });
  local.server().Post("/bad", [](const httplib::Request &,
                                 httplib::Response &res) {
    res.set_content("not json", "text/plain");
  });
  HttpProviderOptions o;
  o.base_url = local.url();
  try {
    HttpProvider(o).Complete({});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kProvider);
  }
  o.path = "/bad";
  try {
    HttpProvider(o).Complete({});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kProvider);
  }
}

TEST(HttpProviderTest, UnreachableHost) {
  HttpProviderOptions o;
  o.base_url = "http://127.0.0.1:1";
  o.timeout = std::chrono::seconds(2);
  EXPECT_THROW(HttpProvider(o).Complete({}), Error);
}

}  // namespace
}  // namespace structview
