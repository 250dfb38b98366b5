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

#ifndef STRUCTVIEW_STATUS_H_
#define STRUCTVIEW_STATUS_H_

#include <stdexcept>
#include <string>

namespace structview {

// Failure classes that callers (mostly the CLI) need to tell apart.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kEmptyCorpus,
  kFixtureMiss,
  kProvider,
  kSandbox,
  kParse,
};

const char *ErrorCodeName(ErrorCode code);

// Process exit status for an error class: 2 invalid argument, 3 empty
// corpus, 4 fixture miss, 5 provider, 6 io, 7 parse, 8 sandbox.
int ExitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace structview

#endif  // STRUCTVIEW_STATUS_H_
