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

#ifndef DUTCHBOOK_CPS_H_
#define DUTCHBOOK_CPS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dutchbook/consistency.h"
#include "dutchbook/model.h"

namespace dutchbook {

// Bitmask over state indices; bit s set iff state s is in the event.
using StateMask = std::uint32_t;

inline constexpr std::size_t kMaxCpsStates = 16;

StateMask MaskOf(std::span<const StateIndex> states);
std::vector<StateIndex> StatesOf(StateMask mask);

// A conditional probability measure for every nonempty subset of the states.
class CompleteCps {
 public:
  // All rows undefined. Throws Error(kInvalidInput) when num_states is zero
  // or exceeds kMaxCpsStates.
  explicit CompleteCps(std::size_t num_states);

  std::size_t num_states() const { return num_states_; }
  StateMask full_mask() const {
    return static_cast<StateMask>((std::uint64_t{1} << num_states_) - 1);
  }
  void Set(StateMask event, Distribution row);
  bool Has(StateMask event) const { return rows_.at(event).has_value(); }
  // Throws Error(kInvalidInput) when the row is undefined.
  const Distribution& operator[](StateMask event) const;

  friend bool operator==(const CompleteCps&, const CompleteCps&) = default;

 private:
  std::size_t num_states_;
  std::vector<std::optional<Distribution>> rows_;  // indexed by mask
};

struct CpsViolation {
  StateMask c = 0;
  StateMask d = 0;  // zero for row-level failures
  std::optional<StateIndex> e;
  Rational lhs;
  Rational rhs;
  std::string reason;
};

// Each row is a probability measure with mu(C|C) = 1, and for every D ⊂ C and
// every e in D: mu(e|C) = mu(e|D) mu(D|C). Throws Error(kInvalidInput) for
// missing rows.
std::optional<CpsViolation> ValidateCompleteCps(const CompleteCps& cps);

// Row C is the first level charging C, conditioned on C.
CompleteCps LcpsToCps(const Lcps& lcps);

// Levels are the rows of the decreasing chain C1 = S,
// C(k+1) = {s : mu(s|Cj) = 0 for all j <= k}.
Lcps CpsToLcps(const CompleteCps& cps);

struct SiniscalchiViolation {
  std::vector<NodeIndex> sequence;
  std::vector<StateIndex> event;
  Rational lhs;
  Rational rhs;
};

// For every sequence (h1..hn) of distinct contingencies with 2 <= n <= max_len
// and every E that is a singleton of S(h1)∩S(hn) or the whole intersection:
//   mu(E|h1) Π mu(S(hm)∩S(hm+1)|hm+1) == mu(E|hn) Π mu(S(hm)∩S(hm+1)|hm).
// max_len defaults to the number of contingencies. Throws
// Error(kUnsupported) on environments without uniform reach and
// Error(kInvalidInput) when max_len < 2.
std::optional<SiniscalchiViolation> CheckSiniscalchi(
    const LearningEnvironment& env, const BeliefSystem& mu,
    std::optional<std::size_t> max_len = std::nullopt);

}  // namespace dutchbook

#endif  // DUTCHBOOK_CPS_H_
