// Copyright 2026 The LocLC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "loclc/error.h"

namespace loclc {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShape:
      return "shape error";
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kFormat:
      return "format error";
    case ErrorCode::kTruncated:
      return "truncated input";
    case ErrorCode::kValidation:
      return "validation error";
    case ErrorCode::kCorruptStream:
      return "corrupt stream";
    case ErrorCode::kModelMismatch:
      return "model mismatch";
    case ErrorCode::kIo:
      return "i/o error";
  }
  return "error";
}

}  // namespace loclc
