// Copyright 2026 The Dutchbook Authors.
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

#include "dutchbook/error.h"

#include <utility>

namespace dutchbook {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid_input";
    case ErrorCode::kDomain: return "domain_error";
    case ErrorCode::kIndeterminate: return "indeterminate";
    case ErrorCode::kPrecondition: return "precondition_violation";
    case ErrorCode::kUnsupported: return "unsupported_environment";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string message, std::string location)
    : std::runtime_error(std::move(message)),
      code_(code),
      location_(std::move(location)) {}

void Fail(ErrorCode code, std::string message, std::string location) {
  throw Error(code, std::move(message), std::move(location));
}

}  // namespace dutchbook
