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

#ifndef DUTCHBOOK_TESTS_UNIT_HELPERS_H_
#define DUTCHBOOK_TESTS_UNIT_HELPERS_H_

#include <string_view>

#include "doctest.h"
#include "dutchbook/error.h"
#include "dutchbook/rational.h"

namespace dutchbook::testing {

inline Rational Q(std::string_view text) { return Rational::Parse(text); }

}  // namespace dutchbook::testing

// Asserts that `expr` throws dutchbook::Error with the given code.
#define CHECK_FAILS_WITH(expr, error_code)                        \
  do {                                                            \
    bool thrown_ = false;                                         \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const ::dutchbook::Error& e) {                       \
      thrown_ = true;                                             \
      CHECK_MESSAGE(e.code() == (error_code), e.what());          \
    }                                                             \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);      \
  } while (false)

#endif  // DUTCHBOOK_TESTS_UNIT_HELPERS_H_
