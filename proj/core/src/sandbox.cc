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

#include "structview/sandbox.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "structview/status.h"

extern char **environ;

namespace structview {

using json = nlohmann::json;

std::string EncodeCheckRequest(std::string_view source,
                               std::string_view entrypoint) {
  json j = {{"op", "check"},
            {"source", source},
            {"entrypoint", entrypoint}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string EncodeRunRequest(std::string_view source,
                             std::string_view entrypoint,
                             const std::vector<SandboxDoc> &docs,
                             int timeout_ms) {
  json jdocs = json::array();
  for (const auto &d : docs) {
    jdocs.push_back({{"doc_id", d.doc_id}, {"text", d.text}});
  }
  json j = {{"op", "run"},
            {"source", source},
            {"entrypoint", entrypoint},
            {"timeout_ms", timeout_ms},
            {"docs", std::move(jdocs)}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

SandboxCheckResult DecodeCheckResponse(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("ok") ||
      !j["ok"].is_boolean()) {
    throw Error(ErrorCode::kSandbox, "malformed check response");
  }
  SandboxCheckResult r;
  r.ok = j["ok"].get<bool>();
  if (j.contains("reason") && j["reason"].is_string()) {
    r.reason = j["reason"].get<std::string>();
  }
  return r;
}

SandboxDocResult DecodeDocResponse(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("doc_id") ||
      !j["doc_id"].is_string()) {
    throw Error(ErrorCode::kSandbox, "malformed run response");
  }
  SandboxDocResult r;
  r.doc_id = j["doc_id"].get<std::string>();
  if (j.contains("error")) {
    r.error = j["error"].is_string() ? j["error"].get<std::string>()
                                     : j["error"].dump();
    return r;
  }
  if (!j.contains("values") || !j["values"].is_array()) {
    throw Error(ErrorCode::kSandbox, "run response without values");
  }
  for (const auto &v : j["values"]) {
    r.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  return r;
}

namespace {

// One spawned worker with pipes to its stdin and stdout. Killed and reaped
// on destruction.
class WorkerProcess {
 public:
  explicit WorkerProcess(const std::vector<std::string> &argv) {
    int in_pipe[2], out_pipe[2];
    if (pipe2(in_pipe, O_CLOEXEC) != 0) throw Error(ErrorCode::kSandbox, "pipe failed");
    if (pipe2(out_pipe, O_CLOEXEC) != 0) {
      close(in_pipe[0]);
      close(in_pipe[1]);
      throw Error(ErrorCode::kSandbox, "pipe failed");
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, in_pipe[1]);
    posix_spawn_file_actions_addclose(&actions, out_pipe[0]);

    std::vector<char *> args;
    for (const auto &a : argv) args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);
    const int rc = posix_spawnp(&pid_, args[0], &actions, nullptr,
                                args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    close(in_pipe[0]);
    close(out_pipe[1]);
    stdin_fd_ = in_pipe[1];
    stdout_fd_ = out_pipe[0];
    if (rc != 0) {
      pid_ = -1;
      throw Error(ErrorCode::kSandbox,
                  std::string("cannot spawn worker: ") + std::strerror(rc));
    }
  }

  WorkerProcess(const WorkerProcess &) = delete;
  WorkerProcess &operator=(const WorkerProcess &) = delete;

  ~WorkerProcess() {
    if (stdin_fd_ >= 0) close(stdin_fd_);
    if (stdout_fd_ >= 0) close(stdout_fd_);
    if (pid_ > 0) {
      int status = 0;
      if (waitpid(pid_, &status, WNOHANG) == 0) {
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
      }
    }
  }

  bool WriteLine(const std::string &line) {
    std::string data = line + "\n";
    size_t off = 0;
    while (off < data.size()) {
      ssize_t n = write(stdin_fd_, data.data() + off, data.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      off += static_cast<size_t>(n);
    }
    return true;
  }

  // Reads one line, waiting at most `timeout`. nullopt on EOF or timeout.
  std::optional<std::string> ReadLine(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
      if (size_t nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) return std::nullopt;
      pollfd pfd{stdout_fd_, POLLIN, 0};
      const int rc = poll(&pfd, 1, static_cast<int>(left.count()));
      if (rc < 0 && errno == EINTR) continue;
      if (rc <= 0) return std::nullopt;
      char chunk[65536];
      const ssize_t n = read(stdout_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;
      buffer_.append(chunk, static_cast<size_t>(n));
    }
  }

 private:
  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string buffer_;
};

std::vector<std::string> WorkerArgv(const SandboxOptions &options) {
  std::vector<std::string> argv = options.command;
  argv.push_back("--timeout-ms");
  argv.push_back(std::to_string(options.timeout.count()));
  return argv;
}

}  // namespace

SandboxClient::SandboxClient(SandboxOptions options)
    : options_(std::move(options)) {
  // A worker that exits early must not take the orchestrator down with it.
  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { signal(SIGPIPE, SIG_IGN); });
}

SandboxCheckResult SandboxClient::Check(std::string_view source,
                                        std::string_view entrypoint) const {
  if (!available()) return {false, "sandbox-unavailable"};
  try {
    WorkerProcess worker(WorkerArgv(options_));
    if (!worker.WriteLine(EncodeCheckRequest(source, entrypoint))) {
      return {false, "sandbox-unavailable"};
    }
    auto line = worker.ReadLine(options_.timeout + options_.grace);
    if (!line) return {false, "sandbox-unavailable"};
    return DecodeCheckResponse(*line);
  } catch (const Error &e) {
    spdlog::warn("sandbox check failed: {}", e.what());
    return {false, "sandbox-unavailable"};
  }
}

std::vector<SandboxDocResult> SandboxClient::Run(
    std::string_view source, std::string_view entrypoint,
    const std::vector<SandboxDoc> &docs) const {
  auto all_failed = [&](const std::string &reason) {
    std::vector<SandboxDocResult> out;
    for (const auto &d : docs) out.push_back({d.doc_id, {}, reason});
    return out;
  };
  if (docs.empty()) return {};
  if (!available()) return all_failed("sandbox-unavailable");
  try {
    WorkerProcess worker(WorkerArgv(options_));
    if (!worker.WriteLine(EncodeRunRequest(
            source, entrypoint, docs,
            static_cast<int>(options_.timeout.count())))) {
      spdlog::warn("sandbox worker closed its input");
      return all_failed("sandbox-crash");
    }
    std::vector<SandboxDocResult> out;
    out.reserve(docs.size());
    for (const auto &d : docs) {
      auto line = worker.ReadLine(options_.timeout + options_.grace);
      if (!line) {
        spdlog::warn("sandbox worker stopped answering at {}", d.doc_id);
        return all_failed("sandbox-crash");
      }
      SandboxDocResult r = DecodeDocResponse(*line);
      if (r.doc_id != d.doc_id) {
        spdlog::warn("sandbox answered {} for {}", r.doc_id, d.doc_id);
        return all_failed("sandbox-crash");
      }
      out.push_back(std::move(r));
    }
    return out;
  } catch (const Error &e) {
    spdlog::warn("sandbox run failed: {}", e.what());
    return all_failed("sandbox-crash");
  }
}

}  // namespace structview
