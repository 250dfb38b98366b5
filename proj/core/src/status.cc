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

#include "structview/status.h"

namespace structview {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kFixtureMiss: return "fixture-miss";
    case ErrorCode::kProvider: return "provider";
    case ErrorCode::kSandbox: return "sandbox";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kEmptyCorpus: return 3;
    case ErrorCode::kFixtureMiss: return 4;
    case ErrorCode::kProvider: return 5;
    case ErrorCode::kIo: return 6;
    case ErrorCode::kParse: return 7;
    case ErrorCode::kSandbox: return 8;
  }
  return 1;
}

}  // namespace structview
