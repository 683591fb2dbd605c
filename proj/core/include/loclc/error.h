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

#ifndef LOCLC_ERROR_H_
#define LOCLC_ERROR_H_

#include <stdexcept>
#include <string>

namespace loclc {

enum class ErrorCode {
  kShape,           // tensor/image extents disagree
  kInvalidArgument,
  kFormat,          // bad magic, version, or malformed file
  kTruncated,
  kValidation,      // well-formed file with forbidden contents
  kCorruptStream,
  kModelMismatch,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported as loclc::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace loclc

#endif  // LOCLC_ERROR_H_
