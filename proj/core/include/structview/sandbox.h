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

#ifndef STRUCTVIEW_SANDBOX_H_
#define STRUCTVIEW_SANDBOX_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace structview {

// Client side of the extractor worker protocol. The worker is spawned as
// `<command...> --timeout-ms N` and speaks JSONL over stdin/stdout:
//
//   -> {"op":"check","source":S,"entrypoint":E}
//   <- {"ok":true} | {"ok":false,"reason":R}
//
//   -> {"op":"run","source":S,"entrypoint":E,"timeout_ms":N,
//       "docs":[{"doc_id":D,"text":T},...]}
//   <- one line per doc, in request order:
//      {"doc_id":D,"values":[...]} | {"doc_id":D,"error":R}

struct SandboxDoc {
  std::string doc_id;
  std::string text;
};

struct SandboxDocResult {
  std::string doc_id;
  std::vector<std::string> values;
  std::optional<std::string> error;

  bool operator==(const SandboxDocResult &) const = default;
};

struct SandboxCheckResult {
  bool ok = false;
  std::string reason;
};

std::string EncodeCheckRequest(std::string_view source,
                               std::string_view entrypoint);
std::string EncodeRunRequest(std::string_view source,
                             std::string_view entrypoint,
                             const std::vector<SandboxDoc> &docs,
                             int timeout_ms);
// Throw kSandbox on malformed lines.
SandboxCheckResult DecodeCheckResponse(std::string_view line);
SandboxDocResult DecodeDocResponse(std::string_view line);

struct SandboxOptions {
  std::vector<std::string> command;  // argv prefix; empty = unavailable
  std::chrono::milliseconds timeout{1000};  // per document
  std::chrono::milliseconds grace{200};
};

class SandboxClient {
 public:
  explicit SandboxClient(SandboxOptions options);

  bool available() const { return !options_.command.empty(); }
  const SandboxOptions &options() const { return options_; }

  // A worker that cannot be started or dies yields ok=false with reason
  // "sandbox-unavailable".
  SandboxCheckResult Check(std::string_view source,
                           std::string_view entrypoint) const;

  // One result per doc in request order. If the worker crashes or stops
  // answering, every doc gets error "sandbox-crash".
  std::vector<SandboxDocResult> Run(std::string_view source,
                                    std::string_view entrypoint,
                                    const std::vector<SandboxDoc> &docs) const;

 private:
  SandboxOptions options_;
};

}  // namespace structview

#endif  // STRUCTVIEW_SANDBOX_H_
