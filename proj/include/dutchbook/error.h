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

#ifndef DUTCHBOOK_ERROR_H_
#define DUTCHBOOK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dutchbook {

enum class ErrorCode {
  kInvalidInput,   // malformed document or structurally invalid model
  kDomain,         // identifier outside the domain of an operation
  kIndeterminate,  // 0/0 odds, or a product mixing zero and infinite factors
  kPrecondition,   // operation not applicable to the given inputs
  kUnsupported,    // environment outside the class an operation handles
  kInternal,       // a verified post-condition failed
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type. `location`
// names the offending element (a contingency, a state, a JSON path) when one
// exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string location = {});

  ErrorCode code() const { return code_; }
  const std::string& location() const { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

[[noreturn]] void Fail(ErrorCode code, std::string message,
                       std::string location = {});

}  // namespace dutchbook

#endif  // DUTCHBOOK_ERROR_H_
